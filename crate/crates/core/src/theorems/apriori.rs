//! Empirical check of the a-priori norm estimate
//! `‖f‖_max^{q−n−1} ≤ K · φ · ψ` with `φ = Π|g_i| / |W_S(f)|` and
//! `ψ = Σ_R |W_S({g_i}_{i∈R})| / Π_{i∈R} |g_i|`.
//!
//! `W_S({g_i}_{i∈R}) = A_R · W_S(f)`, so `ψ` is evaluated from the minors
//! `A_R` of the (numerically normalized) rows and one Wronskian.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::nevanlinna::RadiusGrid;
use crate::symbolic::{
    compose_linear_form, generalized_wronskian, subsets, HyperplaneFamily, NumericMap, NumericPolynomial,
    ProjectiveMap,
};
use crate::words::OperatorSet;

use super::{TheoremError, TheoremId, Verdict, VerificationReport};

pub const DEFAULT_APRIORI_FACTOR: f64 = 100.0;
const MAX_RESAMPLES: usize = 64;
const ZERO_FLOOR: f64 = 1e-250;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AprioriSettings {
    pub samples: usize,
    pub seed: u64,
    /// Passing requires `max/median ≤ factor` over the sampled ratios.
    pub factor: f64,
    /// Radii of spheres that receive half of the samples; the rest are
    /// spread log-uniformly in the ball of the largest radius.
    pub grid: RadiusGrid,
}

impl Default for AprioriSettings {
    fn default() -> Self {
        AprioriSettings { samples: 256, seed: 0, factor: DEFAULT_APRIORI_FACTOR, grid: RadiusGrid::default() }
    }
}

/// Evaluates `‖f‖^{q−n−1}/(φψ)` at sample points.
struct Ratio {
    f: NumericMap,
    rows: Vec<Vec<Complex64>>,
    minors: Vec<(Vec<usize>, f64)>,
    w: NumericPolynomial,
    excess: i32,
}

impl Ratio {
    fn new(map: &ProjectiveMap, h: &HyperplaneFamily, set: &OperatorSet) -> Result<Self, TheoremError> {
        let n = map.n();
        let w = generalized_wronskian(set, map.components())?;
        if w.is_zero() {
            return Err(TheoremError::DegenerateMap { reason: format!("W_S vanishes identically for S = {set}") });
        }
        for i in 0..h.q() {
            if compose_linear_form(map, h.row(i))?.is_zero() {
                return Err(
                    crate::nevanlinna::NevanlinnaError::IdenticallyZeroComposition { hyperplane: Some(i) }.into()
                );
            }
        }
        let rows = h.numeric_rows();
        let norms: Vec<f64> = h
            .rows()
            .iter()
            .map(|r| {
                if h.is_normalized() {
                    r.iter().map(|a| a.to_complex().norm_sqr()).sum::<f64>().sqrt()
                } else {
                    1.0
                }
            })
            .collect();
        let minors = subsets(h.q(), n + 1)
            .map(|s| {
                let a = h.minor(&s).to_complex().norm() / s.iter().map(|&i| norms[i]).product::<f64>();
                (s, a)
            })
            .collect();
        Ok(Ratio {
            f: map.numeric(),
            rows,
            minors,
            w: w.to_numeric(),
            excess: h.q() as i32 - n as i32 - 1,
        })
    }

    /// `None` when `z` sits on a zero of some `g_i` or of `W`.
    fn at(&self, z: &[Complex64]) -> Option<f64> {
        let fz = self.f.eval(z);
        let gs: Vec<f64> =
            self.rows.iter().map(|r| r.iter().zip(&fz).map(|(a, x)| a * x).sum::<Complex64>().norm()).collect();
        let w = self.w.eval(z).norm();
        if w < ZERO_FLOOR || gs.iter().any(|&g| g < ZERO_FLOOR) {
            return None;
        }
        let norm = fz.iter().map(|c| c.norm()).fold(0.0, f64::max);
        // logs keep high-degree products in range
        let log_phi = gs.iter().map(|g| g.ln()).sum::<f64>() - w.ln();
        let terms: Vec<f64> = self
            .minors
            .iter()
            .map(|(r, a)| a.ln() + w.ln() - r.iter().map(|&i| gs[i].ln()).sum::<f64>())
            .collect();
        let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let log_psi = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
        let v = (f64::from(self.excess) * norm.ln() - log_phi - log_psi).exp();
        v.is_finite().then_some(v)
    }
}

/// The ratio at a single point, `None` on a zero of some `g_i` or of `W_S`.
pub fn apriori_ratio(
    map: &ProjectiveMap,
    hyperplanes: &HyperplaneFamily,
    set: &OperatorSet,
    z: &[Complex64],
) -> Result<Option<f64>, TheoremError> {
    Ok(Ratio::new(map, hyperplanes, set)?.at(z))
}

pub fn check_apriori_estimate(
    map: &ProjectiveMap,
    hyperplanes: &HyperplaneFamily,
    set: &OperatorSet,
    settings: &AprioriSettings,
) -> Result<VerificationReport, TheoremError> {
    let ratio = Ratio::new(map, hyperplanes, set)?;
    let p = map.p();
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let radii = settings.grid.radii();
    let rmax = settings.grid.max();
    let mut values = Vec::with_capacity(settings.samples);
    let mut resamples = 0usize;
    for k in 0..settings.samples {
        let r = if k % 2 == 0 {
            radii[(k / 2) % radii.len()]
        } else {
            (rng.random::<f64>() * (rmax.ln() - 0.01f64.ln()) + 0.01f64.ln()).exp()
        };
        let mut tries = 0;
        loop {
            let z = random_sphere_point(p, r, &mut rng);
            if let Some(v) = ratio.at(&z) {
                values.push(v);
                break;
            }
            resamples += 1;
            tries += 1;
            if tries >= MAX_RESAMPLES {
                return Err(TheoremError::Unsupported(format!("could not avoid zeros on the sphere of radius {r}")));
            }
        }
    }
    let mut sorted = values.clone();
    sorted.sort_by(f64::total_cmp);
    let max = *sorted.last().unwrap_or(&0.0);
    let median = if sorted.is_empty() { 0.0 } else { sorted[sorted.len() / 2] };
    let spread = if median > 0.0 { max / median } else { f64::INFINITY };

    let mut rep = VerificationReport::new(TheoremId::Apriori);
    rep.detail("operator_set", set.to_string());
    rep.detail("samples", values.len());
    rep.detail("resamples", resamples);
    rep.detail("empirical_K", max);
    rep.detail("median_ratio", median);
    rep.detail("max_over_median", spread);
    rep.detail("factor", settings.factor);
    rep.verdict = Verdict::from_bool(spread <= settings.factor);
    Ok(rep)
}

fn random_sphere_point(p: usize, r: f64, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let v: Vec<Complex64> =
        (0..p).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|c| c * (r / norm)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::GaussianRational;

    fn line() -> (ProjectiveMap, HyperplaneFamily, OperatorSet) {
        (
            ProjectiveMap::parse(1, &["1", "z"]).unwrap(),
            HyperplaneFamily::from_integers(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap(),
            OperatorSet::parse(1, &["", "1"]).unwrap(),
        )
    }

    #[test]
    fn bounded_on_the_line() {
        let (map, h, s) = line();
        let rep = check_apriori_estimate(&map, &h, &s, &AprioriSettings::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.details);
    }

    #[test]
    fn doubling_unnormalized_rows_rescales_k() {
        let (map, h, s) = line();
        let raw = h.clone().with_normalization(false);
        let doubled = raw.scaled(&GaussianRational::from_integer(2));
        let settings = AprioriSettings::default();
        let k1 = check_apriori_estimate(&map, &raw, &s, &settings).unwrap().get("empirical_K").unwrap().as_f64();
        let k2 = check_apriori_estimate(&map, &doubled, &s, &settings).unwrap().get("empirical_K").unwrap().as_f64();
        let expected = 2f64.powi(-(h.q() as i32));
        assert!((k2.unwrap() / k1.unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn zeros_are_refused() {
        let (map, h, s) = line();
        assert_eq!(apriori_ratio(&map, &h, &s, &[Complex64::new(-1.0, 0.0)]).unwrap(), None);
        assert!(apriori_ratio(&map, &h, &s, &[Complex64::new(0.5, 0.5)]).unwrap().is_some());
    }
}
