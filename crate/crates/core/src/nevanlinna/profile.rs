//! Tables of `T_f`, `m_f(·, H_i)` and `N^{[m]}(·, H_i)` on a radius grid.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::symbolic::{compose_linear_form, HyperplaneFamily, Polynomial, ProjectiveMap, SymbolicError};

use super::counting::SlicedDivisors;
use super::quadrature::{with_reseeding, QuadratureSpec, SphereRule};
use super::roots::divisor_p1;
use super::{NevanlinnaError, RadiusGrid, Truncation};

const EXACT_SLACK: f64 = 1e-9;
const SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSettings {
    pub quadrature: QuadratureSpec,
    /// Random lines per hyperplane for truncated counting when `p ≥ 2`.
    pub slicing_lines: usize,
    pub slicing_seed: u64,
}

impl Default for ProfileSettings {
    fn default() -> Self {
        ProfileSettings { quadrature: QuadratureSpec::default(), slicing_lines: 256, slicing_seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingSeries {
    pub truncation: Truncation,
    pub values: Vec<f64>,
    /// Standard errors for sampled (sliced) estimates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<Vec<f64>>,
}

impl CountingSeries {
    fn sigma(&self, k: usize) -> f64 {
        self.stderr.as_ref().map_or(0.0, |s| s[k])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneProfile {
    pub index: usize,
    pub proximity: Vec<f64>,
    /// One series per requested truncation, ascending.
    pub counting: Vec<CountingSeries>,
    /// For `p ≥ 2`: the sliced estimate at `m = ∞`, a cross-check on the
    /// Jensen values stored in `counting`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sliced_infinite: Option<CountingSeries>,
    /// Smallest multiplicity of the zero divisor (`None` when empty); sampled for `p ≥ 2`.
    pub min_multiplicity: Option<u32>,
}

impl HyperplaneProfile {
    pub fn series(&self, m: Truncation) -> Option<&CountingSeries> {
        self.counting.iter().find(|s| s.truncation == m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalProfile {
    pub p: usize,
    pub grid: RadiusGrid,
    pub truncations: Vec<Truncation>,
    pub order: Vec<f64>,
    pub hyperplanes: Vec<HyperplaneProfile>,
}

impl FunctionalProfile {
    pub fn counting(&self, hyperplane: usize, m: Truncation) -> Option<&[f64]> {
        self.hyperplanes[hyperplane].series(m).map(|s| s.values.as_slice())
    }

    /// `m + N − T` along the grid for a hyperplane (degree 1 forms).
    pub fn fmt_residual(&self, hyperplane: usize) -> Vec<f64> {
        let h = &self.hyperplanes[hyperplane];
        let n = h.series(Truncation::Infinite).expect("profiles always carry m = ∞");
        (0..self.grid.len()).map(|k| h.proximity[k] + n.values[k] - self.order[k]).collect()
    }

    /// Tolerance for comparisons involving quadrature values.
    pub fn default_slack(&self) -> f64 {
        if self.p == 1 {
            1e-6
        } else {
            1e-2
        }
    }

    /// Every failed monotonicity or truncation-ordering condition. Exact
    /// comparisons allow rounding; comparisons against quadrature values
    /// allow `slack`; sampled estimates also allow three standard errors.
    pub fn violations(&self, slack: f64) -> Vec<String> {
        let mut out = Vec::new();
        let radii = self.grid.radii();
        let tol = |x: f64| EXACT_SLACK * (1.0 + x.abs());
        for k in 1..radii.len() {
            if self.order[k] < self.order[k - 1] - slack {
                out.push(format!("T decreases between r={} and r={}", radii[k - 1], radii[k]));
            }
        }
        for h in &self.hyperplanes {
            let i = h.index;
            for s in h.counting.iter().chain(&h.sliced_infinite) {
                let quad_based = self.p > 1 && s.truncation == Truncation::Infinite && s.stderr.is_none();
                for k in 1..radii.len() {
                    let allow = if quad_based { slack } else { tol(s.values[k]) };
                    if s.values[k] < s.values[k - 1] - allow {
                        out.push(format!("N^[{}] of H{i} decreases at r={}", s.truncation, radii[k]));
                    }
                }
            }
            let n1 = h.series(Truncation::Level(1));
            for (a, s) in h.counting.iter().enumerate() {
                for t in &h.counting[a + 1..] {
                    let mixed = self.p > 1 && t.truncation == Truncation::Infinite;
                    for k in 0..radii.len() {
                        let allow = if mixed {
                            slack + SIGMAS * (s.sigma(k).powi(2) + h.sliced_sigma(k).powi(2)).sqrt()
                        } else {
                            tol(t.values[k])
                        };
                        if s.values[k] > t.values[k] + allow {
                            out.push(format!(
                                "N^[{}] > N^[{}] for H{i} at r={}",
                                s.truncation, t.truncation, radii[k]
                            ));
                        }
                    }
                }
                if let (Some(n1), Truncation::Level(m)) = (n1, s.truncation) {
                    for k in 0..radii.len() {
                        if s.values[k] > f64::from(m) * n1.values[k] + tol(s.values[k]) {
                            out.push(format!("N^[{m}] > {m}·N^[1] for H{i} at r={}", radii[k]));
                        }
                    }
                }
            }
            if let Some(si) = &h.sliced_infinite {
                for s in h.counting.iter().filter(|s| s.truncation.is_finite()) {
                    for k in 0..radii.len() {
                        if s.values[k] > si.values[k] + tol(si.values[k]) {
                            out.push(format!("sliced N^[{}] > sliced N for H{i} at r={}", s.truncation, radii[k]));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), NevanlinnaError> {
        match self.violations(self.default_slack()).into_iter().next() {
            None => Ok(()),
            Some(v) => Err(NevanlinnaError::ProfileInvariant(v)),
        }
    }
}

impl HyperplaneProfile {
    fn sliced_sigma(&self, k: usize) -> f64 {
        self.sliced_infinite.as_ref().map_or(0.0, |s| s.sigma(k))
    }
}

/// Computes the full table. `Truncation::Infinite` is always included.
pub fn profile(
    map: &ProjectiveMap,
    hyperplanes: &HyperplaneFamily,
    grid: &RadiusGrid,
    truncations: &[Truncation],
    settings: &ProfileSettings,
) -> Result<FunctionalProfile, NevanlinnaError> {
    let p = map.p();
    if hyperplanes.n() != map.n() {
        return Err(SymbolicError::DimensionMismatch { expected: map.n() + 1, got: hyperplanes.n() + 1 }.into());
    }
    let mut truncs: Vec<Truncation> = truncations.to_vec();
    truncs.push(Truncation::Infinite);
    truncs.sort();
    truncs.dedup();

    let gs: Vec<Polynomial> = (0..hyperplanes.q())
        .map(|i| {
            let g = compose_linear_form(map, hyperplanes.row(i))?;
            if g.is_zero() {
                return Err(NevanlinnaError::IdenticallyZeroComposition { hyperplane: Some(i) });
            }
            Ok(g)
        })
        .collect::<Result<_, _>>()?;

    let rows = hyperplanes.numeric_rows();
    let log_amax: Vec<f64> = rows.iter().map(|r| r.iter().map(|a| a.norm()).fold(0.0, f64::max).ln()).collect();
    let num = map.numeric();
    let q = rows.len();
    let integrand = |z: &[Complex64]| {
        let w = num.eval(z);
        let mut out = Vec::with_capacity(q + 1);
        out.push(w.iter().map(|c| c.norm()).fold(0.0, f64::max).ln());
        for row in &rows {
            let g: Complex64 = row.iter().zip(&w).map(|(a, x)| a * x).sum();
            out.push(g.norm().ln());
        }
        out
    };
    let base_rule = SphereRule::new(p, &settings.quadrature)?;
    let averages_at = |r: f64| {
        with_reseeding(&settings.quadrature, |spec| {
            if spec == &settings.quadrature {
                base_rule.average_many(r, q + 1, integrand)
            } else {
                SphereRule::new(p, spec)?.average_many(r, q + 1, integrand)
            }
        })
    };
    let per_radius: Vec<Vec<f64>> = grid.radii().par_iter().map(|&r| averages_at(r)).collect::<Result<_, _>>()?;
    let order: Vec<f64> = per_radius.iter().map(|v| v[0]).collect();
    let at_one = if p > 1 { Some(averages_at(1.0)?) } else { None };

    let hyperplanes_out = gs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let proximity: Vec<f64> = per_radius.iter().map(|v| v[0] + log_amax[i] - v[i + 1]).collect();
            if p == 1 {
                let div = divisor_p1(g);
                let counting = truncs
                    .iter()
                    .map(|&m| CountingSeries {
                        truncation: m,
                        values: grid.radii().iter().map(|&r| div.counting(r, m)).collect(),
                        stderr: None,
                    })
                    .collect();
                return Ok(HyperplaneProfile {
                    index: i,
                    proximity,
                    counting,
                    sliced_infinite: None,
                    min_multiplicity: div.min_multiplicity(),
                });
            }
            let base = at_one.as_ref().unwrap()[i + 1];
            let slices =
                SlicedDivisors::sample(g, settings.slicing_lines, settings.slicing_seed.wrapping_add(i as u64))?;
            let sliced = |m: Truncation| {
                let est: Vec<_> = grid.radii().iter().map(|&r| slices.counting(r, m)).collect();
                CountingSeries {
                    truncation: m,
                    values: est.iter().map(|e| e.value).collect(),
                    stderr: Some(est.iter().map(|e| e.stderr).collect()),
                }
            };
            let counting = truncs
                .iter()
                .map(|&m| match m {
                    Truncation::Infinite => CountingSeries {
                        truncation: m,
                        values: per_radius.iter().map(|v| v[i + 1] - base).collect(),
                        stderr: None,
                    },
                    _ => sliced(m),
                })
                .collect();
            Ok(HyperplaneProfile {
                index: i,
                proximity,
                counting,
                sliced_infinite: Some(sliced(Truncation::Infinite)),
                min_multiplicity: slices.min_multiplicity(),
            })
        })
        .collect::<Result<Vec<_>, NevanlinnaError>>()?;

    Ok(FunctionalProfile { p, grid: grid.clone(), truncations: truncs, order, hyperplanes: hyperplanes_out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_profile(grid: Vec<f64>) -> FunctionalProfile {
        let map = ProjectiveMap::parse(1, &["1", "z"]).unwrap();
        let h = HyperplaneFamily::from_integers(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        profile(&map, &h, &RadiusGrid::new(grid).unwrap(), &[Truncation::Level(1)], &ProfileSettings::default())
            .unwrap()
    }

    #[test]
    fn closed_form_table() {
        let prof = line_profile(vec![10.0, 100.0]);
        let (a, b) = (10f64.ln(), 100f64.ln());
        assert!((prof.order[0] - a).abs() < 1e-12 && (prof.order[1] - b).abs() < 1e-12);
        let n1 = |i| prof.counting(i, Truncation::Level(1)).unwrap().to_vec();
        assert_eq!(n1(0), vec![0.0, 0.0]);
        assert!((n1(1)[0] - a).abs() < 1e-12 && (n1(1)[1] - b).abs() < 1e-12);
        assert!((n1(2)[0] - a).abs() < 1e-12 && (n1(2)[1] - b).abs() < 1e-12);
        prof.validate().unwrap();
    }

    #[test]
    fn fmt_residual_is_flat() {
        let prof = line_profile(RadiusGrid::default().radii().to_vec());
        for i in 0..3 {
            let e = prof.fmt_residual(i);
            let spread = e.iter().cloned().fold(f64::MIN, f64::max) - e.iter().cloned().fold(f64::MAX, f64::min);
            assert!(spread < 5e-3, "H{i}: {e:?}");
        }
    }

    #[test]
    fn simple_zero_of_middle_coordinate() {
        let map = ProjectiveMap::parse(1, &["1", "z", "z^2"]).unwrap();
        let h = HyperplaneFamily::from_integers(&[&[0, 1, 0]]).unwrap();
        let prof = profile(&map, &h, &RadiusGrid::new(vec![5.0]).unwrap(), &[], &ProfileSettings::default()).unwrap();
        assert!((prof.counting(0, Truncation::Infinite).unwrap()[0] - 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn zero_composition_names_the_hyperplane() {
        let map = ProjectiveMap::parse(1, &["1", "1 + z", "z"]).unwrap();
        let h = HyperplaneFamily::unchecked(
            [[0, 0, 1], [1, -1, 1]]
                .iter()
                .map(|r| r.iter().map(|&v| crate::symbolic::GaussianRational::from_integer(v)).collect())
                .collect(),
        )
        .unwrap();
        let err = profile(&map, &h, &RadiusGrid::default(), &[], &ProfileSettings::default()).unwrap_err();
        assert_eq!(err, NevanlinnaError::IdenticallyZeroComposition { hyperplane: Some(1) });
    }

    #[test]
    fn bivariate_profile_is_consistent() {
        let map = ProjectiveMap::parse(2, &["1", "z1", "z2"]).unwrap();
        let h = HyperplaneFamily::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let settings = ProfileSettings {
            quadrature: QuadratureSpec::new(super::super::Scheme::ProductRule, 4096, 1).unwrap(),
            ..Default::default()
        };
        let grid = RadiusGrid::geometric(10.0, 1000.0, 2).unwrap();
        let prof = profile(&map, &h, &grid, &[Truncation::Level(1), Truncation::Level(2)], &settings).unwrap();
        prof.validate().unwrap();
        // coordinate hyperplane z1 = 0: N(r) = log r on every line
        let n = prof.counting(1, Truncation::Level(1)).unwrap();
        for (v, r) in n.iter().zip(grid.radii()) {
            assert!((v - r.ln()).abs() < 1e-9);
        }
    }
}
