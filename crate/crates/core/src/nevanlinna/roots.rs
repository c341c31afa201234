//! Zero divisors of univariate polynomials: exact multiplicities from a
//! square-free decomposition, locations from simultaneous iteration.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::symbolic::gcd::square_free_decomposition;
use crate::symbolic::Polynomial;

use super::Truncation;

const MAX_ITER: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivisorPoint {
    pub location: Complex64,
    pub multiplicity: u32,
}

/// Finite divisor `Σ m_k [a_k]` on `C`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DivisorP1 {
    points: Vec<DivisorPoint>,
}

impl DivisorP1 {
    /// Points are sorted by real, then imaginary part.
    pub fn new(mut points: Vec<DivisorPoint>) -> Self {
        assert!(points.iter().all(|pt| pt.multiplicity > 0));
        points.sort_by(|a, b| a.location.re.total_cmp(&b.location.re).then(a.location.im.total_cmp(&b.location.im)));
        DivisorP1 { points }
    }

    pub fn points(&self) -> &[DivisorPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn min_multiplicity(&self) -> Option<u32> {
        self.points.iter().map(|p| p.multiplicity).min()
    }

    /// Multiplicity at the point nearest to `z`, if one lies within `tol`.
    pub fn multiplicity_near(&self, z: Complex64, tol: f64) -> u32 {
        self.points
            .iter()
            .filter(|p| (p.location - z).norm() <= tol)
            .min_by(|a, b| (a.location - z).norm().total_cmp(&(b.location - z).norm()))
            .map_or(0, |p| p.multiplicity)
    }

    /// `N^{[m]}(r) = Σ_{|a| ≤ r} min(mult, m) · log(r / max(|a|, 1))`.
    pub fn counting(&self, r: f64, m: Truncation) -> f64 {
        counting_from_norms(self.points.iter().map(|p| (p.location.norm(), p.multiplicity)), r, m)
    }
}

pub(crate) fn counting_from_norms(points: impl Iterator<Item = (f64, u32)>, r: f64, m: Truncation) -> f64 {
    points
        .filter(|&(a, _)| a <= r)
        .map(|(a, mult)| f64::from(m.apply(mult)) * (r / a.max(1.0)).ln())
        .sum()
}

/// Truncated counting function of a divisor on `C`.
pub fn counting_p1(div: &DivisorP1, r: f64, m: Truncation) -> f64 {
    div.counting(r, m)
}

/// Zero divisor of a univariate polynomial; empty for constants.
pub fn divisor_p1(g: &Polynomial) -> DivisorP1 {
    assert_eq!(g.nvars(), 1, "divisor_p1 takes a univariate polynomial");
    assert!(!g.is_zero(), "the zero polynomial has no divisor");
    let mut points = Vec::new();
    for sf in square_free_decomposition(g) {
        for location in square_free_roots(&sf.factor) {
            points.push(DivisorPoint { location, multiplicity: sf.multiplicity });
        }
    }
    DivisorP1::new(points)
}

/// Roots of a square-free polynomial. A zero root is split off exactly and
/// linear factors are solved exactly.
fn square_free_roots(f: &Polynomial) -> Vec<Complex64> {
    let coeffs = f.dense_coefficients();
    let mut roots = Vec::new();
    let mut start = 0;
    if coeffs[0].is_zero() {
        roots.push(Complex64::zero());
        start = 1;
    }
    let rest = &coeffs[start..];
    match rest.len() {
        0 | 1 => {}
        2 => roots.push((-(&rest[0]) * rest[1].inv().expect("nonzero leading coefficient")).to_complex()),
        _ => {
            let c: Vec<Complex64> = rest.iter().map(|x| x.to_complex()).collect();
            roots.extend(aberth(&c));
        }
    }
    roots
}

/// All roots of `Σ c_k z^k` (ascending coefficients, nonzero leading term)
/// by Aberth–Ehrlich iteration followed by a Newton polish.
pub fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara bound on root moduli
    let bound = (0..n)
        .map(|k| monic[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        * 2.0;
    let radius = bound.max(1e-12) * 0.5;
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4)).collect();
    let deriv: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let p = horner(&monic, z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / horner(&deriv, z[i]);
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..2 {
            let d = horner(&deriv, *zi);
            if d.is_zero() {
                break;
            }
            let step = horner(&monic, *zi) / d;
            if step.is_finite() {
                *zi -= step;
            }
        }
    }
    z
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_polynomial as pp;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-10
    }

    #[test]
    fn factored_inputs() {
        let d = divisor_p1(&pp("z^2*(z - 1)", 1).unwrap());
        assert_eq!(d.points().len(), 2);
        assert!(close(d.points()[0].location, Complex64::new(0.0, 0.0)));
        assert_eq!(d.points()[0].multiplicity, 2);
        assert!(close(d.points()[1].location, Complex64::new(1.0, 0.0)));
        assert_eq!(d.points()[1].multiplicity, 1);

        let d = divisor_p1(&pp("1 + z^2", 1).unwrap());
        assert_eq!(d.points().len(), 2);
        assert!(close(d.points()[0].location, Complex64::new(0.0, -1.0)));
        assert!(close(d.points()[1].location, Complex64::new(0.0, 1.0)));

        assert!(divisor_p1(&pp("7", 1).unwrap()).is_empty());
    }

    #[test]
    fn counting_examples() {
        let d = divisor_p1(&pp("z^2*(z - 1)", 1).unwrap());
        let r: f64 = 50.0;
        assert!((d.counting(r, Truncation::Infinite) - 3.0 * r.ln()).abs() < 1e-12);
        assert!((d.counting(r, Truncation::Level(1)) - 2.0 * r.ln()).abs() < 1e-12);
        assert_eq!(DivisorP1::default().counting(r, Truncation::Infinite), 0.0);
        // a zero outside the unit disc contributes log(r/|a|) once inside
        let d = divisor_p1(&pp("z - 4", 1).unwrap());
        assert!((d.counting(8.0, Truncation::Infinite) - 2f64.ln()).abs() < 1e-12);
        assert_eq!(d.counting(3.0, Truncation::Infinite), 0.0);
    }

    #[test]
    fn aberth_recovers_roots_of_unity() {
        let mut c = vec![Complex64::zero(); 13];
        c[0] = Complex64::new(-1.0, 0.0);
        c[12] = Complex64::new(1.0, 0.0);
        let roots = aberth(&c);
        for z in &roots {
            assert!((z.powu(12) - 1.0).norm() < 1e-12);
        }
        for k in 0..12 {
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 12.0);
            assert!(roots.iter().any(|z| close(*z, w)));
        }
    }

    #[test]
    fn multiplicities_are_exact() {
        let d = divisor_p1(&pp("(z - 2)^3*(z + i)^2*(z^2 + 1)", 1).unwrap());
        assert_eq!(d.degree(), 7);
        assert_eq!(d.multiplicity_near(Complex64::new(2.0, 0.0), 1e-9), 3);
        assert_eq!(d.multiplicity_near(Complex64::new(0.0, -1.0), 1e-9), 3);
        assert_eq!(d.multiplicity_near(Complex64::new(0.0, 1.0), 1e-9), 1);
        assert_eq!(d.min_multiplicity(), Some(1));
    }
}
