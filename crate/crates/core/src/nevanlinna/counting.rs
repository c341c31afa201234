//! Counting functions for `p ≥ 1`: the Jensen-formula estimate (untruncated)
//! and the line-slicing estimator (any truncation).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::symbolic::{GaussianRational, Polynomial};

use super::quadrature::{with_reseeding, Estimate, QuadratureSpec, SphereRule};
use super::roots::{counting_from_norms, divisor_p1};
use super::{NevanlinnaError, Truncation};

const SLICE_RETRIES: usize = 16;
const DIRECTION_BITS: u32 = 20;

/// `N(r, (g)_0) ≈ avg_{‖z‖=r} log|g| − avg_{‖z‖=1} log|g|`.
pub fn counting_jensen(g: &Polynomial, r: f64, quad: &QuadratureSpec) -> Result<f64, NevanlinnaError> {
    if g.is_zero() {
        return Err(NevanlinnaError::ZeroPolynomial);
    }
    if !(r > 1.0) {
        return Err(NevanlinnaError::InvalidRadius(r));
    }
    let num = g.to_numeric();
    let h = |z: &[Complex64]| num.eval(z).norm().ln();
    with_reseeding(quad, |spec| {
        let rule = SphereRule::new(g.nvars(), spec)?;
        Ok(rule.average(r, h)? - rule.average(1.0, h)?)
    })
}

/// [`counting_jensen`] over independently seeded replicates.
pub fn counting_jensen_replicated(
    g: &Polynomial,
    r: f64,
    quad: &QuadratureSpec,
    replicates: usize,
) -> Result<Estimate, NevanlinnaError> {
    let values = (0..replicates.max(1) as u64)
        .map(|k| counting_jensen(g, r, &quad.with_seed(quad.replicate_seed(k))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Estimate::from_samples(&values))
}

/// Zero divisors of `g` restricted to random complex lines through the
/// origin, stored as (distance from origin, exact multiplicity).
///
/// Directions are complex Gaussian vectors rounded to dyadic rationals so
/// that restrictions and multiplicities are exact; their law is uniform on
/// `P^{p−1}` up to the rounding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlicedDivisors {
    lines: Vec<Vec<(f64, u32)>>,
}

impl SlicedDivisors {
    pub fn sample(g: &Polynomial, lines: usize, seed: u64) -> Result<Self, NevanlinnaError> {
        if g.is_zero() {
            return Err(NevanlinnaError::ZeroPolynomial);
        }
        if lines == 0 {
            return Err(NevanlinnaError::InvalidSlicing("need at least one line".into()));
        }
        let lines = (0..lines)
            .into_par_iter()
            .map(|k| slice_once(g, seed, k as u64))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SlicedDivisors { lines })
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Mean of the per-line truncated counting functions and its standard error.
    pub fn counting(&self, r: f64, m: Truncation) -> Estimate {
        let values: Vec<f64> =
            self.lines.iter().map(|pts| counting_from_norms(pts.iter().copied(), r, m)).collect();
        Estimate::from_samples(&values)
    }

    /// Smallest multiplicity seen on any line, `None` if no line met the divisor.
    pub fn min_multiplicity(&self) -> Option<u32> {
        self.lines.iter().flatten().map(|&(_, m)| m).min()
    }
}

fn slice_once(g: &Polynomial, seed: u64, line: u64) -> Result<Vec<(f64, u32)>, NevanlinnaError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(line);
    for _ in 0..SLICE_RETRIES {
        let u: Vec<GaussianRational> = (0..g.nvars()).map(|_| gaussian_dyadic(&mut rng)).collect();
        let scale = u.iter().map(|x| x.to_complex().norm_sqr()).sum::<f64>().sqrt();
        if scale == 0.0 {
            continue;
        }
        let h = g.restrict_to_line(&u);
        if h.is_zero() {
            continue;
        }
        let div = divisor_p1(&h);
        return Ok(div.points().iter().map(|pt| (pt.location.norm() * scale, pt.multiplicity)).collect());
    }
    Err(NevanlinnaError::DegenerateSlice { attempts: SLICE_RETRIES })
}

fn gaussian_dyadic(rng: &mut ChaCha8Rng) -> GaussianRational {
    let den = BigInt::from(1u64 << DIRECTION_BITS);
    let mut q = || {
        let x: f64 = rng.sample(StandardNormal);
        BigRational::new(BigInt::from((x * f64::from(1u32 << DIRECTION_BITS)).round() as i64), den.clone())
    };
    let re = q();
    GaussianRational::new(re, q())
}

/// Line-slicing estimate of `N^{[m]}(r, (g)_0)` for `g` on `C^p`.
pub fn counting_sliced(
    g: &Polynomial,
    r: f64,
    m: Truncation,
    lines: usize,
    seed: u64,
) -> Result<Estimate, NevanlinnaError> {
    if g.nvars() < 2 {
        return Err(NevanlinnaError::InvalidSlicing("slicing needs p >= 2; use divisor_p1 for p = 1".into()));
    }
    if !(r > 1.0) {
        return Err(NevanlinnaError::InvalidRadius(r));
    }
    Ok(SlicedDivisors::sample(g, lines, seed)?.counting(r, m))
}
