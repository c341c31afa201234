//! Polynomial gcd over `Q(i)` and square-free decomposition.
//!
//! Multivariate gcds use the recursive primitive PRS algorithm: pick a main
//! variable, split off contents (gcds of coefficients, computed recursively
//! in the remaining variables), then run pseudo-remainder sequences on the
//! primitive parts. Results are normalized to leading coefficient 1.

use super::poly::Polynomial;

fn lead_in(p: &Polynomial, var: usize) -> Polynomial {
    p.coefficients_in(var).pop().unwrap_or_else(|| Polynomial::zero(p.nvars()))
}

/// Pseudo-remainder of `f` by `g` with respect to `var`.
fn pseudo_rem(f: &Polynomial, g: &Polynomial, var: usize) -> Polynomial {
    let dg = g.degree_in(var).expect("pseudo-division by zero");
    let lcg = lead_in(g, var);
    let mut r = f.clone();
    while let Some(dr) = r.degree_in(var) {
        if dr < dg {
            break;
        }
        let lcr = lead_in(&r, var);
        let mut shift = vec![0; r.nvars()];
        shift[var] = dr - dg;
        r = &(&lcg * &r) - &(&lcr * &g.shift(&shift));
    }
    r
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let coeffs = p.coefficients_in(var);
    if coeffs.is_empty() {
        return Polynomial::zero(p.nvars());
    }
    gcd_many(coeffs.iter())
}

fn primitive_part(p: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").monic()
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.nvars(), b.nvars(), "arity mismatch");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let nvars = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(nvars);
    }
    let var = (0..nvars).find(|&v| a.involves(v) || b.involves(v)).unwrap();
    if !a.involves(var) {
        return gcd(a, &content_in(b, var));
    }
    if !b.involves(var) {
        return gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).unwrap();
    let mut g = b.div_exact(&cb).unwrap();
    if f.degree_in(var) < g.degree_in(var) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == Some(0) {
            // remainder free of the main variable: primitive parts are coprime
            return c.monic();
        }
        f = g;
        g = primitive_part(&r, var);
    }
    (&c * &primitive_part(&g, var)).monic()
}

pub fn gcd_many<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    let mut it = ps.into_iter();
    let Some(first) = it.next() else {
        return Polynomial::zero(0);
    };
    let mut acc = first.monic();
    for p in it {
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
        acc = gcd(&acc, p);
    }
    acc
}

/// Factor of a square-free decomposition: `factor` appears to the power
/// `multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeFactor {
    pub factor: Polynomial,
    pub multiplicity: u32,
}

/// Yun's algorithm for a univariate polynomial: returns pairwise coprime,
/// square-free, monic, nonconstant factors `s_k` with `f = c · Π s_k^{m_k}`.
pub fn square_free_decomposition(f: &Polynomial) -> Vec<SquareFreeFactor> {
    assert_eq!(f.nvars(), 1, "square-free decomposition is univariate");
    if f.is_constant() {
        return Vec::new();
    }
    let df = f.derivative(0);
    let a0 = gcd(f, &df);
    let mut b = f.div_exact(&a0).unwrap();
    let c = df.div_exact(&a0).unwrap();
    let mut d = &c - &b.derivative(0);
    let mut out = Vec::new();
    let mut k = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push(SquareFreeFactor { factor: a.monic(), multiplicity: k });
        }
        b = b.div_exact(&a).unwrap();
        let c = d.div_exact(&a).unwrap();
        d = &c - &b.derivative(0);
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse::parse_polynomial as pp;

    #[test]
    fn univariate_gcd() {
        let a = pp("(z - 1)^2*(z + i)", 1).unwrap();
        let b = pp("(z - 1)*(z + 2)", 1).unwrap();
        assert_eq!(gcd(&a, &b), pp("z - 1", 1).unwrap());
        assert!(gcd(&pp("z", 1).unwrap(), &pp("z + 1", 1).unwrap()).is_constant());
    }

    #[test]
    fn multivariate_gcd() {
        let common = pp("z1*z2 - 1 + z2^2", 2).unwrap();
        let a = &common * &pp("z1 + z2^3", 2).unwrap();
        let b = &common * &pp("(z1 - i)^2", 2).unwrap();
        assert_eq!(gcd(&a, &b), common.monic());

        let c3 = pp("z1 + z3", 3).unwrap();
        let a3 = &c3 * &pp("z2^2 + z1*z3", 3).unwrap();
        let b3 = &c3 * &c3;
        assert_eq!(gcd(&a3, &b3), c3.monic());
        assert!(gcd(&pp("z1", 2).unwrap(), &pp("z2", 2).unwrap()).is_constant());
    }

    #[test]
    fn gcd_with_content() {
        let a = pp("z2*(z1 + 1)", 2).unwrap();
        let b = pp("z2^2*(z1 - 1)", 2).unwrap();
        assert_eq!(gcd(&a, &b), pp("z2", 2).unwrap());
    }

    #[test]
    fn yun_examples() {
        let f = pp("3*z^2*(z - 1)", 1).unwrap();
        let sf = square_free_decomposition(&f);
        assert_eq!(
            sf,
            vec![
                SquareFreeFactor { factor: pp("z - 1", 1).unwrap(), multiplicity: 1 },
                SquareFreeFactor { factor: pp("z", 1).unwrap(), multiplicity: 2 },
            ]
        );
        let g = pp("(z^2 + 1)^3*(z - 2)*(z + 5)^3", 1).unwrap();
        let sf = square_free_decomposition(&g);
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0].multiplicity, 1);
        assert_eq!(sf[1], SquareFreeFactor { factor: pp("(z^2 + 1)*(z + 5)", 1).unwrap(), multiplicity: 3 });
        assert!(square_free_decomposition(&pp("7", 1).unwrap()).is_empty());
    }
}
