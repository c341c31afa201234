//! Order and proximity functions.

use num_complex::Complex64;

use crate::symbolic::{NumericMap, Polynomial, ProjectiveMap};

use super::quadrature::{sphere_average_reseeding, QuadratureSpec};
use super::NevanlinnaError;

/// `T_f(r) = ∫_{‖z‖=r} log ‖f(z)‖_max γ`.
pub fn order_function(map: &ProjectiveMap, r: f64, quad: &QuadratureSpec) -> Result<f64, NevanlinnaError> {
    if !(r > 1.0) {
        return Err(NevanlinnaError::InvalidRadius(r));
    }
    let num = map.numeric();
    sphere_average_reseeding(|z| num.norm_max(z).ln(), map.p(), r, quad)
}

/// `m_f(r, D) = ∫ log(‖f‖_max^d ‖Q‖_max / |Q(f)|) γ` for a homogeneous `Q`
/// in `w_0..w_n` of degree `d`. `‖Q‖_max` is the largest coefficient modulus.
pub fn proximity(
    map: &ProjectiveMap,
    q: &Polynomial,
    r: f64,
    quad: &QuadratureSpec,
) -> Result<f64, NevanlinnaError> {
    if q.nvars() != map.n() + 1 {
        return Err(NevanlinnaError::Symbolic(crate::symbolic::SymbolicError::ArityMismatch {
            expected: map.n() + 1,
            got: q.nvars(),
        }));
    }
    let d = homogeneous_degree(q).ok_or(NevanlinnaError::NotHomogeneous)?;
    if q.compose(map.components()).is_zero() {
        return Err(NevanlinnaError::IdenticallyZeroComposition { hyperplane: None });
    }
    let num = map.numeric();
    let qn = q.to_numeric();
    let log_qmax = q.max_coefficient_norm().ln();
    sphere_average_reseeding(
        |z| proximity_integrand(&num, z, d, log_qmax, |w| qn.eval(w)),
        map.p(),
        r,
        quad,
    )
}

pub(crate) fn proximity_integrand(
    num: &NumericMap,
    z: &[Complex64],
    d: u32,
    log_qmax: f64,
    q: impl Fn(&[Complex64]) -> Complex64,
) -> f64 {
    let w = num.eval(z);
    let norm = w.iter().map(|c| c.norm()).fold(0.0, f64::max);
    f64::from(d) * norm.ln() + log_qmax - q(&w).norm().ln()
}

fn homogeneous_degree(q: &Polynomial) -> Option<u32> {
    let mut degs = q.terms().map(|(e, _)| e.iter().sum::<u32>());
    let d = degs.next()?;
    degs.all(|k| k == d).then_some(d)
}

/// `log binom(d + n, n)`, the lower bound constant for the proximity function.
pub fn proximity_lower_bound(d: u32, n: usize) -> f64 {
    let (d, n) = (f64::from(d), n as f64);
    ln_gamma_int(d + n) - ln_gamma_int(d) - ln_gamma_int(n)
}

fn ln_gamma_int(k: f64) -> f64 {
    // ln(k!) for a nonnegative integer k
    (1..=k as u64).map(|j| (j as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_polynomial as pp;

    #[test]
    fn order_closed_forms() {
        let quad = QuadratureSpec::default();
        let r: f64 = 10.0;
        let line = ProjectiveMap::parse(1, &["1", "z"]).unwrap();
        assert!((order_function(&line, r, &quad).unwrap() - r.ln()).abs() < 1e-12);
        let conic = ProjectiveMap::parse(1, &["1", "z^2"]).unwrap();
        assert!((order_function(&conic, r, &quad).unwrap() - 2.0 * r.ln()).abs() < 1e-12);
        let constant = ProjectiveMap::parse(1, &["1", "3"]).unwrap();
        assert!((order_function(&constant, r, &quad).unwrap() - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn proximity_closed_forms() {
        let quad = QuadratureSpec::default();
        let line = ProjectiveMap::parse(1, &["1", "z"]).unwrap();
        let w1 = pp("w1", 2).unwrap();
        assert!(proximity(&line, &w1, 100.0, &quad).unwrap().abs() < 1e-12);
        let w0 = pp("w0", 2).unwrap();
        assert!((proximity(&line, &w0, 100.0, &quad).unwrap() - 100f64.ln()).abs() < 1e-12);
        let a = proximity(&line, &pp("w0 + w1", 2).unwrap(), 30.0, &quad).unwrap();
        let b = proximity(&line, &pp("(3 - 2*i)*w0 + (3 - 2*i)*w1", 2).unwrap(), 30.0, &quad).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn proximity_rejects_bad_forms() {
        let quad = QuadratureSpec::default();
        let m = ProjectiveMap::parse(1, &["1", "i", "z", "i*z"]).unwrap();
        let fermat = pp("w0^2 + w1^2 + w2^2 + w3^2", 4).unwrap();
        assert!(matches!(
            proximity(&m, &fermat, 2.0, &quad),
            Err(NevanlinnaError::IdenticallyZeroComposition { .. })
        ));
        assert!(matches!(
            proximity(&m, &pp("w0 + w1^2", 4).unwrap(), 2.0, &quad),
            Err(NevanlinnaError::NotHomogeneous)
        ));
    }

    #[test]
    fn lower_bound_constant() {
        assert!((proximity_lower_bound(1, 1) - 2f64.ln()).abs() < 1e-14);
        assert!((proximity_lower_bound(2, 3) - 10f64.ln()).abs() < 1e-12);
    }
}
