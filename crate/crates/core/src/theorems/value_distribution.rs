//! First and Second Main Theorem checks, defects and ramification.

use crate::nevanlinna::{
    divisor_p1, profile, FunctionalProfile, ProfileSettings, RadiusGrid, SlicedDivisors, Truncation,
};
use crate::symbolic::{
    compose_linear_form, find_witness_family, generic_rank, is_linearly_independent, HyperplaneFamily,
    ProjectiveMap, SymbolicError,
};
use crate::words::OperatorSet;

use super::{kappa, ErrorTermFit, RamificationEstimate, TheoremError, TheoremId, Verdict, VerificationReport};

pub const DEFAULT_FMT_BAND: f64 = 0.05;
/// Largest allowed `max(0, −margin)/T` over the last decade of the grid.
pub const SMT_RATIO: f64 = 0.05;
/// Slack on the defect sum for the finite-radius surrogate.
pub const DEFECT_SLACK: f64 = 0.1;

/// First Main Theorem: `e(r) = m + N − T` stays within `band` (strictly)
/// for every hyperplane of the family.
pub fn check_fmt(
    map: &ProjectiveMap,
    hyperplanes: &HyperplaneFamily,
    grid: &RadiusGrid,
    settings: &ProfileSettings,
    band: f64,
) -> Result<VerificationReport, TheoremError> {
    let prof = profile(map, hyperplanes, grid, &[], settings)?;
    Ok(check_fmt_profile(&prof, band))
}

pub fn check_fmt_profile(prof: &FunctionalProfile, band: f64) -> VerificationReport {
    let mut rep = VerificationReport::new(TheoremId::Fmt);
    rep.radii = prof.grid.radii().to_vec();
    let mut worst = (f64::NEG_INFINITY, Vec::new());
    let mut spreads = Vec::new();
    for h in &prof.hyperplanes {
        let e = prof.fmt_residual(h.index);
        let spread = spread(&e);
        spreads.push(spread);
        rep.detail(&format!("residual_H{}", h.index), &e);
        if spread > worst.0 {
            worst = (spread, e);
        }
    }
    rep.margins = worst.1;
    rep.detail("band", band);
    rep.detail("spreads", &spreads);
    rep.verdict = Verdict::from_bool(spreads.iter().all(|&s| s < band));
    rep
}

fn spread(v: &[f64]) -> f64 {
    let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    hi - lo
}

/// Hypotheses of the Second Main Theorem: `q ≥ n + 2`, general position,
/// linear nondegeneracy and maximal rank. Returns the witness operator set
/// when `p ≤ n`.
pub fn smt_preconditions(
    map: &ProjectiveMap,
    hyperplanes: &HyperplaneFamily,
) -> Result<Option<OperatorSet>, TheoremError> {
    let (p, n, q) = (map.p(), map.n(), hyperplanes.q());
    if hyperplanes.n() != n {
        return Err(SymbolicError::DimensionMismatch { expected: n + 1, got: hyperplanes.n() + 1 }.into());
    }
    if q < n + 2 {
        return Err(TheoremError::TooFewHyperplanes { q, n });
    }
    if let Some(rows) = hyperplanes.general_position_violation() {
        return Err(TheoremError::NotGeneralPosition { rows });
    }
    if p <= n {
        return match find_witness_family(map) {
            Ok(s) => Ok(Some(s)),
            Err(SymbolicError::LinearlyDegenerate) => {
                Err(TheoremError::DegenerateMap { reason: "components are linearly dependent".into() })
            }
            Err(SymbolicError::NotMaximalRank { rank, expected }) => {
                Err(TheoremError::NotMaximalRank { rank, expected })
            }
            Err(e) => Err(e.into()),
        };
    }
    if !is_linearly_independent(map.components())?.independent {
        return Err(TheoremError::DegenerateMap { reason: "components are linearly dependent".into() });
    }
    let rank = generic_rank(map);
    if rank < n {
        return Err(TheoremError::NotMaximalRank { rank, expected: n });
    }
    Ok(None)
}

/// Second Main Theorem at truncation `κ(p, n)` (or the given level).
pub fn check_smt(
    map: &ProjectiveMap,
    hyperplanes: &HyperplaneFamily,
    grid: &RadiusGrid,
    settings: &ProfileSettings,
    truncation: Option<Truncation>,
) -> Result<VerificationReport, TheoremError> {
    let witness = smt_preconditions(map, hyperplanes)?;
    let m = truncation.unwrap_or(Truncation::Level(kappa(map.p(), map.n()) as u32));
    let prof = profile(map, hyperplanes, grid, &[m], settings)?;
    let mut rep = check_smt_profile(&prof, map.n(), m);
    if let Some(s) = witness {
        rep.detail("witness", s.to_string());
    }
    Ok(rep)
}

/// `margin(r) = Σ_i N^{[m]}(r, H_i) − (q − n − 1)·T(r)`; passes when
/// `max(0, −margin)/T ≤ SMT_RATIO` on the last decade of the grid.
pub fn check_smt_profile(prof: &FunctionalProfile, n: usize, m: Truncation) -> VerificationReport {
    let mut rep = VerificationReport::new(TheoremId::Smt);
    let radii = prof.grid.radii();
    let q = prof.hyperplanes.len();
    let excess = q as f64 - n as f64 - 1.0;
    let mut sigma = vec![0.0f64; radii.len()];
    let margins: Vec<f64> = (0..radii.len())
        .map(|k| {
            let total: f64 = prof
                .hyperplanes
                .iter()
                .map(|h| {
                    let s = h.series(m).expect("profile computed at the requested truncation");
                    if let Some(se) = &s.stderr {
                        sigma[k] += se[k] * se[k];
                    }
                    s.values[k]
                })
                .sum();
            total - excess * prof.order[k]
        })
        .collect();
    let violation: Vec<f64> = margins.iter().map(|&x| (-x).max(0.0)).collect();
    let fit = fit_error_term(&prof.order, radii, &violation);
    let last_decade = prof.grid.max() / 10.0;
    let ratio = radii
        .iter()
        .zip(&violation)
        .zip(&prof.order)
        .filter(|((r, _), _)| **r >= last_decade * (1.0 - 1e-12))
        .map(|((_, v), t)| if *v == 0.0 { 0.0 } else if *t > 0.0 { v / t } else { f64::INFINITY })
        .fold(0.0, f64::max);
    rep.violation_radii = radii.iter().zip(&margins).filter(|(_, m)| **m < 0.0).map(|(r, _)| *r).collect();
    rep.radii = radii.to_vec();
    rep.margins = margins;
    rep.fit = Some(fit);
    rep.detail("truncation", m);
    rep.detail("q", q);
    rep.detail("n", n);
    rep.detail("final_decade_ratio", ratio);
    rep.detail("threshold", SMT_RATIO);
    if sigma.iter().any(|&s| s > 0.0) {
        rep.detail("margin_stderr", sigma.iter().map(|s| s.sqrt()).collect::<Vec<_>>());
    }
    if !rep.violation_radii.is_empty() {
        rep.notes.push(format!("{} grid radii with negative margin", rep.violation_radii.len()));
    }
    rep.verdict = Verdict::from_bool(ratio <= SMT_RATIO);
    rep
}

/// Nonnegative least squares of `y` against `[log T, log r]`.
pub fn fit_error_term(order: &[f64], radii: &[f64], y: &[f64]) -> ErrorTermFit {
    let x1: Vec<f64> = order.iter().map(|t| t.max(1.0).ln()).collect();
    let x2: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let resid = |c1: f64, c2: f64| {
        x1.iter().zip(&x2).zip(y).map(|((a, b), v)| (v - c1 * a - c2 * b).powi(2)).sum::<f64>()
    };
    let mut candidates = vec![(0.0, 0.0)];
    let (a11, a12, a22) = (dot(&x1, &x1), dot(&x1, &x2), dot(&x2, &x2));
    let (b1, b2) = (dot(&x1, y), dot(&x2, y));
    if a11 > 0.0 {
        candidates.push(((b1 / a11).max(0.0), 0.0));
    }
    if a22 > 0.0 {
        candidates.push((0.0, (b2 / a22).max(0.0)));
    }
    let det = a11 * a22 - a12 * a12;
    if det.abs() > 1e-12 * (a11 * a22).max(1e-300) {
        let c1 = (b1 * a22 - b2 * a12) / det;
        let c2 = (a11 * b2 - a12 * b1) / det;
        if c1 >= 0.0 && c2 >= 0.0 {
            candidates.push((c1, c2));
        }
    }
    let (c1, c2) = candidates
        .into_iter()
        .min_by(|a, b| resid(a.0, a.1).total_cmp(&resid(b.0, b.1)))
        .unwrap();
    ErrorTermFit { c1, c2, residual: resid(c1, c2).sqrt() }
}

/// Defects `δ_i = 1 − N^{[k]}(R, H_i)/T(R)` at the largest radius `R`.
pub fn defects(
    map: &ProjectiveMap,
    hyperplanes: &HyperplaneFamily,
    grid: &RadiusGrid,
    settings: &ProfileSettings,
    k: Truncation,
) -> Result<(Vec<f64>, VerificationReport), TheoremError> {
    smt_preconditions(map, hyperplanes)?;
    let prof = profile(map, hyperplanes, grid, &[k], settings)?;
    Ok(defects_profile(&prof, map.n(), k))
}

pub fn defects_profile(prof: &FunctionalProfile, n: usize, k: Truncation) -> (Vec<f64>, VerificationReport) {
    let mut rep = VerificationReport::new(TheoremId::Defects);
    let radii = prof.grid.radii();
    let delta_at = |idx: usize| -> Vec<f64> {
        prof.hyperplanes
            .iter()
            .map(|h| 1.0 - h.series(k).expect("requested truncation").values[idx] / prof.order[idx])
            .collect()
    };
    let last = radii.len() - 1;
    let deltas = delta_at(last);
    let sum: f64 = deltas.iter().sum();
    let bound = (n + 1) as f64 + DEFECT_SLACK;
    rep.radii = radii.to_vec();
    rep.margins = (0..radii.len()).map(|i| bound - delta_at(i).iter().sum::<f64>()).collect();
    rep.detail("truncation", k);
    rep.detail("deltas", &deltas);
    rep.detail("sum", sum);
    rep.detail("bound", bound);
    rep.verdict = Verdict::from_bool(sum <= bound);
    (deltas, rep)
}

/// `μ_i` = smallest multiplicity of `(g_i)_0`; passes iff
/// `Σ (1 − κ/μ_i) ≤ n + 1`. For `p ≥ 2` multiplicities come from
/// `lines` random slices and are therefore a sample.
pub fn ramification_check(
    map: &ProjectiveMap,
    hyperplanes: &HyperplaneFamily,
    lines: usize,
    seed: u64,
) -> Result<(RamificationEstimate, VerificationReport), TheoremError> {
    let (p, n) = (map.p(), map.n());
    let mut mu = Vec::with_capacity(hyperplanes.q());
    for i in 0..hyperplanes.q() {
        let g = compose_linear_form(map, hyperplanes.row(i))?;
        if g.is_zero() {
            return Err(crate::nevanlinna::NevanlinnaError::IdenticallyZeroComposition { hyperplane: Some(i) }.into());
        }
        mu.push(if p == 1 {
            divisor_p1(&g).min_multiplicity()
        } else {
            SlicedDivisors::sample(&g, lines, seed.wrapping_add(i as u64))?.min_multiplicity()
        });
    }
    let est = RamificationEstimate { mu, sampled: p > 1 };
    let k = kappa(p, n);
    let sum = est.defect_sum(k);
    let mut rep = VerificationReport::new(TheoremId::Ramification);
    rep.detail("mu", &est);
    rep.detail("kappa", k);
    rep.detail("sum", sum);
    rep.detail("bound", n + 1);
    rep.detail("hypotheses_hold", smt_preconditions(map, hyperplanes).is_ok());
    if est.sampled {
        rep.notes.push(format!("multiplicities sampled on {lines} random lines"));
    }
    rep.verdict = Verdict::from_bool(sum <= (n + 1) as f64 + 1e-12);
    Ok((est, rep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> (ProjectiveMap, HyperplaneFamily) {
        (
            ProjectiveMap::parse(1, &["1", "z"]).unwrap(),
            HyperplaneFamily::from_integers(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap(),
        )
    }

    #[test]
    fn fmt_on_the_line() {
        let (map, h) = line();
        let settings = ProfileSettings::default();
        let rep = check_fmt(&map, &h, &RadiusGrid::default(), &settings, DEFAULT_FMT_BAND).unwrap();
        assert!(rep.passed());
        let e1 = rep.get("residual_H1").unwrap().as_array().unwrap();
        assert!(e1.iter().all(|v| v.as_f64().unwrap().abs() < 1e-12));
        let rep = check_fmt(&map, &h, &RadiusGrid::default(), &settings, 0.0).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn smt_margin_is_log_r() {
        let (map, h) = line();
        let rep = check_smt(&map, &h, &RadiusGrid::default(), &ProfileSettings::default(), None).unwrap();
        assert!(rep.passed());
        for (m, r) in rep.margins.iter().zip(&rep.radii) {
            assert!((m - r.ln()).abs() < 5e-3);
        }
        assert!(rep.violation_radii.is_empty());
    }

    #[test]
    fn smt_preconditions_are_enforced() {
        let map = ProjectiveMap::parse(1, &["1", "z"]).unwrap();
        let two = HyperplaneFamily::from_integers(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(smt_preconditions(&map, &two).unwrap_err(), TheoremError::TooFewHyperplanes { q: 2, n: 1 });
        let deg = ProjectiveMap::parse(1, &["1", "z", "1 + z"]).unwrap();
        let h = HyperplaneFamily::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        assert!(matches!(smt_preconditions(&deg, &h), Err(TheoremError::DegenerateMap { .. })));
        let flat = ProjectiveMap::parse(2, &["1", "z1", "z1^2"]).unwrap();
        assert_eq!(
            smt_preconditions(&flat, &h).unwrap_err(),
            TheoremError::NotMaximalRank { rank: 1, expected: 2 }
        );
    }

    #[test]
    fn fit_recovers_nonnegative_coefficients() {
        let radii: Vec<f64> = RadiusGrid::default().radii().to_vec();
        let order: Vec<f64> = radii.iter().map(|r| 3.0 * r.ln()).collect();
        let y: Vec<f64> = order.iter().zip(&radii).map(|(t, r)| 0.5 * t.ln() + 2.0 * r.ln()).collect();
        let fit = fit_error_term(&order, &radii, &y);
        assert!((fit.c1 - 0.5).abs() < 1e-8 && (fit.c2 - 2.0).abs() < 1e-8, "{fit:?}");
        let neg: Vec<f64> = radii.iter().map(|r| -r.ln()).collect();
        let fit = fit_error_term(&order, &radii, &neg);
        assert_eq!((fit.c1, fit.c2), (0.0, 0.0));
    }

    #[test]
    fn defects_on_the_line() {
        let (map, h) = line();
        let (d, rep) =
            defects(&map, &h, &RadiusGrid::default(), &ProfileSettings::default(), Truncation::Level(1)).unwrap();
        assert!((d[0] - 1.0).abs() < 1e-3);
        assert!(d[1].abs() < 1e-3 && d[2].abs() < 1e-3);
        assert!(rep.passed());
        let scaled = h.scaled(&crate::symbolic::GaussianRational::from_integer(7));
        let (d2, _) =
            defects(&map, &scaled, &RadiusGrid::default(), &ProfileSettings::default(), Truncation::Level(1))
                .unwrap();
        for (a, b) in d.iter().zip(&d2) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn ramification_examples() {
        let cubic = ProjectiveMap::parse(1, &["1", "z^3"]).unwrap();
        let h = HyperplaneFamily::from_integers(&[&[0, 1]]).unwrap();
        let (est, _) = ramification_check(&cubic, &h, 0, 0).unwrap();
        assert_eq!(est.mu, vec![Some(3)]);
        let (map, h) = line();
        let (est, rep) = ramification_check(&map, &h, 0, 0).unwrap();
        assert_eq!(est.mu, vec![None, Some(1), Some(1)]);
        assert!(rep.passed());
        assert!((rep.get("sum").unwrap().as_f64().unwrap() - 1.0).abs() < 1e-15);
    }
}
