//! Numeric Nevanlinna functionals on radius grids: order function `T_f`,
//! proximity `m_f`, truncated counting functions `N^{[m]}`.
//!
//! Counting functions integrate from radius 1, so zeros inside the unit
//! ball contribute `min(mult, m)·log r`. For `p = 1` they are exact given
//! the divisor; for `p ≥ 2` the untruncated one comes from Jensen's formula
//! and truncated ones from averaging over random complex lines.

mod counting;
mod functionals;
mod profile;
mod quadrature;
mod roots;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::symbolic::SymbolicError;

pub use counting::{counting_jensen, counting_jensen_replicated, counting_sliced, SlicedDivisors};
pub use functionals::{order_function, proximity, proximity_lower_bound};
pub use profile::{profile, CountingSeries, FunctionalProfile, HyperplaneProfile, ProfileSettings};
pub use quadrature::{
    replicated_average, sphere_average, sphere_average_reseeding, Estimate, QuadratureSpec, Scheme, SphereRule,
    MIN_NODES,
};
pub use roots::{aberth, counting_p1, divisor_p1, DivisorP1, DivisorPoint};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NevanlinnaError {
    #[error("non-finite integrand at quadrature node {node} (point {point:?})")]
    QuadratureFailure { node: usize, point: Vec<[f64; 2]> },
    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),
    #[error("radius {0} is out of range")]
    InvalidRadius(f64),
    #[error("invalid radius grid: {0}")]
    InvalidGrid(String),
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("invalid slicing request: {0}")]
    InvalidSlicing(String),
    #[error("{}", match .hyperplane {
        Some(i) => format!("the image lies in hyperplane {i}: its composition with the map vanishes identically"),
        None => "the composition with the map vanishes identically".to_string(),
    })]
    IdenticallyZeroComposition { hyperplane: Option<usize> },
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("the zero polynomial has no divisor")]
    ZeroPolynomial,
    #[error("every sampled line lay inside the zero divisor ({attempts} attempts)")]
    DegenerateSlice { attempts: usize },
    #[error("profile invariant violated: {0}")]
    ProfileInvariant(String),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// Truncation level `m` of a counting function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Truncation {
    Level(u32),
    Infinite,
}

impl Truncation {
    pub fn level(m: u32) -> Result<Self, NevanlinnaError> {
        if m == 0 {
            return Err(NevanlinnaError::InvalidTruncation("levels start at 1".into()));
        }
        Ok(Truncation::Level(m))
    }

    /// `min(mult, m)`.
    pub fn apply(self, mult: u32) -> u32 {
        match self {
            Truncation::Level(m) => mult.min(m),
            Truncation::Infinite => mult,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Truncation::Level(_))
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::Level(m) => write!(f, "{m}"),
            Truncation::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Truncation {
    type Err = NevanlinnaError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Truncation::Infinite),
            t => Truncation::level(t.parse().map_err(|_| NevanlinnaError::InvalidTruncation(s.to_string()))?),
        }
    }
}

impl Serialize for Truncation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Truncation::Level(m) => s.serialize_u32(*m),
            Truncation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Truncation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(m) => Truncation::level(m),
            Raw::Str(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Strictly increasing radii, all greater than 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusGrid {
    radii: Vec<f64>,
}

impl Default for RadiusGrid {
    /// `r_k = 10^{k/4}`, `k = 4..=16`.
    fn default() -> Self {
        RadiusGrid::geometric(10.0, 1e4, 4).expect("valid default grid")
    }
}

impl RadiusGrid {
    pub fn new(radii: Vec<f64>) -> Result<Self, NevanlinnaError> {
        if radii.is_empty() {
            return Err(NevanlinnaError::InvalidGrid("no radii".into()));
        }
        if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 1.0)) {
            return Err(NevanlinnaError::InvalidGrid(format!("radius {r} is not a finite value > 1")));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(NevanlinnaError::InvalidGrid("radii must be strictly increasing".into()));
        }
        Ok(RadiusGrid { radii })
    }

    /// `per_decade` points per factor of ten from `min` up to `max`
    /// (inclusive when it falls on the lattice).
    pub fn geometric(min: f64, max: f64, per_decade: u32) -> Result<Self, NevanlinnaError> {
        if per_decade == 0 || !(max >= min) {
            return Err(NevanlinnaError::InvalidGrid(format!("bad geometric grid {min}..{max}/{per_decade}")));
        }
        let (lo, hi) = (min.log10(), max.log10());
        let steps = ((hi - lo) * f64::from(per_decade) + 1e-9).floor() as i64;
        Self::new((0..=steps).map(|k| 10f64.powf(lo + k as f64 / f64::from(per_decade))).collect())
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn max(&self) -> f64 {
        *self.radii.last().unwrap()
    }

    pub fn min(&self) -> f64 {
        self.radii[0]
    }
}

impl<'de> Deserialize<'de> for RadiusGrid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        RadiusGrid::new(Vec::<f64>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid() {
        let g = RadiusGrid::default();
        assert_eq!(g.len(), 13);
        assert!((g.min() - 10.0).abs() < 1e-12);
        assert!((g.max() - 1e4).abs() < 1e-8);
    }

    #[test]
    fn grid_validation() {
        assert!(RadiusGrid::new(vec![1.0, 2.0]).is_err());
        assert!(RadiusGrid::new(vec![2.0, 2.0]).is_err());
        assert!(RadiusGrid::new(vec![]).is_err());
        assert!(RadiusGrid::new(vec![1.5, f64::INFINITY]).is_err());
        assert!(RadiusGrid::new(vec![1.5, 2.0]).is_ok());
    }

    #[test]
    fn truncation_roundtrip() {
        for t in [Truncation::Level(1), Truncation::Level(3), Truncation::Infinite] {
            let s = serde_json::to_string(&t).unwrap();
            assert_eq!(serde_json::from_str::<Truncation>(&s).unwrap(), t);
            assert_eq!(t.to_string().parse::<Truncation>().unwrap(), t);
        }
        assert!(serde_json::from_str::<Truncation>("0").is_err());
        assert!(Truncation::Level(2) < Truncation::Infinite);
        assert_eq!(Truncation::Level(2).apply(5), 2);
    }
}
