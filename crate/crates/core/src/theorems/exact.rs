//! Exact divisor checks for `p = 1`: pole orders of logarithmic derivatives
//! and the vanishing-order estimate for Wronskians.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::nevanlinna::divisor_p1;
use crate::symbolic::gcd::{gcd, square_free_decomposition};
use crate::symbolic::{compose_linear_form, generalized_wronskian, HyperplaneFamily, Polynomial, ProjectiveMap};
use crate::words::{OperatorSet, Word};

use super::{kappa, TheoremError, TheoremId, Verdict, VerificationReport};

const MATCH_TOL: f64 = 1e-7;

fn require_univariate(p: usize) -> Result<(), TheoremError> {
    if p != 1 {
        return Err(TheoremError::Unsupported(format!("exact divisor checks need p = 1, got p = {p}")));
    }
    Ok(())
}

/// For every zero `t_0` of `g`, the pole order of `Δ^w g / g` at `t_0` is at
/// most `min(ord_{t_0} g, |w|)`. Pole orders come from the reduced
/// denominator `g / gcd(g, Δ^w g)`. `samples` probe directions per zero
/// give a numeric estimate of each pole order for the report.
pub fn check_pole_order_bound(g: &Polynomial, w: &Word, samples: usize) -> Result<VerificationReport, TheoremError> {
    require_univariate(g.nvars())?;
    w.validate(1)?;
    let mut rep = VerificationReport::new(TheoremId::PoleOrder);
    rep.detail("g", g.to_string());
    rep.detail("word", w.to_string());
    let dg = g.differentiate(w);
    if g.is_zero() || dg.is_zero() {
        rep.notes.push("derivative vanishes identically; bound holds vacuously".into());
        rep.verdict = Verdict::Pass;
        return Ok(rep);
    }
    let den = g.div_exact(&gcd(g, &dg)).expect("gcd divides g");
    let zeros = divisor_p1(g);
    let poles = divisor_p1(&den);
    let num = dg.to_numeric();
    let gn = g.to_numeric();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut table = Vec::new();
    let mut ok = true;
    for pt in zeros.points() {
        let pole = poles.multiplicity_near(pt.location, MATCH_TOL * (1.0 + pt.location.norm()));
        let bound = pt.multiplicity.min(w.order() as u32);
        let probe = probe_pole_order(pt.location, samples, &mut rng, |z| num.eval(&[z]) / gn.eval(&[z]));
        ok &= pole <= bound;
        rep.margins.push(f64::from(bound) - f64::from(pole));
        table.push(serde_json::json!({
            "zero": [pt.location.re, pt.location.im],
            "order": pt.multiplicity,
            "pole_order": pole,
            "bound": bound,
            "probe_slope": probe,
        }));
    }
    rep.detail("zeros", table);
    rep.verdict = Verdict::from_bool(ok);
    Ok(rep)
}

/// Average slope of `log|h|` against `−log|z − t_0|` between two small radii.
fn probe_pole_order(
    t0: Complex64,
    samples: usize,
    rng: &mut ChaCha8Rng,
    h: impl Fn(Complex64) -> Complex64,
) -> Option<f64> {
    if samples == 0 {
        return None;
    }
    let (e1, e2) = (1e-3, 1e-4);
    let slopes: Vec<f64> = (0..samples)
        .filter_map(|_| {
            let dir = Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
            let a = h(t0 + dir * e1).norm().ln();
            let b = h(t0 + dir * e2).norm().ln();
            let s = (b - a) / (e1 / e2).ln();
            s.is_finite().then_some(s)
        })
        .collect();
    (!slopes.is_empty()).then(|| slopes.iter().sum::<f64>() / slopes.len() as f64)
}

/// `Σ_i (g_i)_0 − (W_S(f))_0 ≤ Σ_i min{(g_i)_0, n+1−p}` as divisors.
///
/// Decided exactly: with `t_i = Π_k s_{ik}^{min(k, κ)}` built from the
/// square-free decomposition `g_i = c·Π_k s_{ik}^k`, the inequality holds iff
/// `Π_i g_i / t_i` divides `W_S(f)`. A pointwise table from numeric divisors
/// is attached to the report.
pub fn check_vanishing_estimate(
    map: &ProjectiveMap,
    hyperplanes: &HyperplaneFamily,
    set: &OperatorSet,
) -> Result<VerificationReport, TheoremError> {
    require_univariate(map.p())?;
    let n = map.n();
    let level = (n + 1 - map.p()) as u32;
    let w = generalized_wronskian(set, map.components())?;
    if w.is_zero() {
        return Err(TheoremError::DegenerateMap { reason: format!("W_S vanishes identically for S = {set}") });
    }
    let gs: Vec<Polynomial> = (0..hyperplanes.q())
        .map(|i| compose_linear_form(map, hyperplanes.row(i)))
        .collect::<Result<_, _>>()?;
    if let Some(i) = gs.iter().position(Polynomial::is_zero) {
        return Err(crate::nevanlinna::NevanlinnaError::IdenticallyZeroComposition { hyperplane: Some(i) }.into());
    }
    let mut excess = Polynomial::one(1);
    for g in &gs {
        for sf in square_free_decomposition(g) {
            let extra = sf.multiplicity.saturating_sub(level);
            if extra > 0 {
                excess = &excess * &sf.factor.pow(extra);
            }
        }
    }
    let exact_ok = w.div_exact(&excess).is_some();

    let divs: Vec<_> = gs.iter().map(divisor_p1).collect();
    let wdiv = divisor_p1(&w);
    let mut points: Vec<Complex64> = Vec::new();
    for pt in divs.iter().flat_map(|d| d.points()).chain(wdiv.points()) {
        if !points.iter().any(|z| (z - pt.location).norm() <= MATCH_TOL * (1.0 + z.norm())) {
            points.push(pt.location);
        }
    }
    let mut table = Vec::new();
    let mut pointwise_ok = true;
    for z in &points {
        let tol = MATCH_TOL * (1.0 + z.norm());
        let ords: Vec<u32> = divs.iter().map(|d| d.multiplicity_near(*z, tol)).collect();
        let lhs = ords.iter().map(|&o| i64::from(o)).sum::<i64>() - i64::from(wdiv.multiplicity_near(*z, tol));
        let rhs: i64 = ords.iter().map(|&o| i64::from(o.min(level))).sum();
        pointwise_ok &= lhs <= rhs;
        table.push(serde_json::json!({ "point": [z.re, z.im], "lhs": lhs, "rhs": rhs }));
    }
    let mut rep = VerificationReport::new(TheoremId::Vanishing);
    rep.detail("operator_set", set.to_string());
    rep.detail("wronskian", w.to_string());
    rep.detail("truncation", level);
    rep.detail("kappa", kappa(map.p(), n));
    rep.detail("excess_divides_wronskian", exact_ok);
    rep.detail("pointwise_agrees", pointwise_ok == exact_ok);
    rep.detail("points", table);
    if pointwise_ok != exact_ok {
        rep.notes.push("numeric pointwise table disagrees with the exact divisibility test".into());
    }
    rep.verdict = Verdict::from_bool(exact_ok);
    Ok(rep)
}
