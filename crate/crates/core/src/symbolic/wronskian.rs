//! Generalized Wronskians and the linear-algebra facts built on them.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::gaussian::GaussianRational;
use super::linalg;
use super::map::ProjectiveMap;
use super::poly::{Monomial, Polynomial};
use super::SymbolicError;
use crate::words::{enumerate_admissible_full_sets, witness_candidates, OperatorSet};

/// `W_S(f_0,…,f_n)`: determinant of the matrix whose row `s` is `Δ^s`
/// applied to every `f_j`, rows in the canonical order of `S`.
pub fn generalized_wronskian(set: &OperatorSet, fs: &[Polynomial]) -> Result<Polynomial, SymbolicError> {
    let nvars = check_family(set, fs)?;
    if !set.is_admissible() {
        return Err(SymbolicError::Words(crate::words::WordError::NotAdmissible));
    }
    Ok(linalg::det_polynomial(derivative_matrix(set, fs), nvars))
}

fn check_family(set: &OperatorSet, fs: &[Polynomial]) -> Result<usize, SymbolicError> {
    if set.len() != fs.len() {
        return Err(SymbolicError::DimensionMismatch { expected: set.len(), got: fs.len() });
    }
    let nvars = fs[0].nvars();
    if let Some(bad) = fs.iter().find(|f| f.nvars() != nvars) {
        return Err(SymbolicError::ArityMismatch { expected: nvars, got: bad.nvars() });
    }
    if set.p() != nvars {
        return Err(SymbolicError::ArityMismatch { expected: nvars, got: set.p() });
    }
    Ok(nvars)
}

fn derivative_matrix(set: &OperatorSet, fs: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    set.words().iter().map(|w| fs.iter().map(|f| f.differentiate(w)).collect()).collect()
}

/// Deterministic probe points with small Gaussian-rational coordinates.
fn probe_point(nvars: usize, k: usize) -> Vec<GaussianRational> {
    (0..nvars)
        .map(|l| {
            let a = (3 * l + 5 * k + 2) as i64;
            let b = (7 * l + 3 * k + 1) as i64;
            GaussianRational::from_parts((a, 11 + k as i64), (b - 4, 13))
        })
        .collect()
}

/// Whether `W_S(fs) ≢ 0`.
///
/// A nonzero value at an exact probe point certifies nonvanishing; when both
/// probes vanish the determinant is expanded symbolically.
pub fn wronskian_is_nonzero(set: &OperatorSet, fs: &[Polynomial]) -> Result<bool, SymbolicError> {
    let nvars = check_family(set, fs)?;
    let m = derivative_matrix(set, fs);
    for k in 0..2 {
        let pt = probe_point(nvars, k);
        let vals: Vec<Vec<GaussianRational>> =
            m.iter().map(|row| row.iter().map(|e| e.eval_exact(&pt)).collect()).collect();
        if !linalg::det(vals).is_zero() {
            return Ok(true);
        }
    }
    Ok(!linalg::det_polynomial(m, nvars).is_zero())
}

/// Rank of the coefficient matrix of `fs` (rows = polynomials, columns =
/// monomials).
pub fn coefficient_rank(fs: &[Polynomial]) -> usize {
    linalg::rank(&coefficient_matrix(fs).0)
}

fn coefficient_matrix(fs: &[Polynomial]) -> (Vec<Vec<GaussianRational>>, Vec<Monomial>) {
    let monos: BTreeSet<Monomial> = fs.iter().flat_map(|f| f.terms().map(|(e, _)| e.clone())).collect();
    let monos: Vec<Monomial> = monos.into_iter().collect();
    let rows = fs.iter().map(|f| monos.iter().map(|e| f.coefficient(e)).collect()).collect();
    (rows, monos)
}

/// Linear relations `Σ c_j f_j = 0`, as a basis of coefficient vectors.
pub fn linear_relations(fs: &[Polynomial]) -> Vec<Vec<GaussianRational>> {
    let (rows, monos) = coefficient_matrix(fs);
    // relations are the left kernel: transpose then take the null space
    let transposed: Vec<Vec<GaussianRational>> =
        (0..monos.len()).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
    linalg::null_space(&transposed, fs.len())
}

/// Outcome of [`is_linearly_independent`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    /// First admissible full set with nonvanishing Wronskian.
    pub witness: Option<OperatorSet>,
}

/// Decides linear independence by the exact rank of the coefficient matrix,
/// and cross-checks it against a search over geometric generalized
/// Wronskians. Disagreement is reported as
/// [`SymbolicError::WronskianDiscrepancy`].
pub fn is_linearly_independent(fs: &[Polynomial]) -> Result<Independence, SymbolicError> {
    if fs.is_empty() {
        return Ok(Independence { independent: true, witness: None });
    }
    let p = fs[0].nvars();
    let n = fs.len() - 1;
    let independent = coefficient_rank(fs) == fs.len();
    let mut witness = None;
    for set in enumerate_admissible_full_sets(p, n, None)? {
        if wronskian_is_nonzero(&set, fs)? {
            witness = Some(set);
            break;
        }
    }
    if independent != witness.is_some() {
        return Err(SymbolicError::WronskianDiscrepancy {
            rank_says_independent: independent,
            witness: witness.map(|s| s.to_string()),
        });
    }
    Ok(Independence { independent, witness })
}

/// Generic rank of the differential of `map`.
///
/// In the chart `f_k ≠ 0` the Jacobian of `(f_j/f_k)_{j≠k}` has rows
/// `(f_k ∂f_j − f_j ∂f_k)/f_k²`; the denominators do not change the rank
/// over the function field, so the polynomial numerators are ranked
/// directly. The maximum over charts is returned.
pub fn generic_rank(map: &ProjectiveMap) -> usize {
    let p = map.p();
    let fs = map.components();
    let mut best = 0;
    for (k, fk) in fs.iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        let dk: Vec<Polynomial> = (0..p).map(|l| fk.derivative(l)).collect();
        let rows: Vec<Vec<Polynomial>> = fs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, fj)| (0..p).map(|l| &(fk * &fj.derivative(l)) - &(fj * &dk[l])).collect())
            .collect();
        best = best.max(linalg::rank_polynomial(rows, p));
        if best == p.min(map.n()) {
            break;
        }
    }
    best
}

/// An admissible full set `S` with `W_S(f) ≢ 0` that contains every
/// single-letter word. Such a set has all orders `≤ n+1−p`.
///
/// Note: the existence argument gives at least `p` first-order operators;
/// a weaker count of `p−1` would not bound the orders by `n+1−p`.
pub fn find_witness_family(map: &ProjectiveMap) -> Result<OperatorSet, SymbolicError> {
    let (p, n) = (map.p(), map.n());
    if p > n {
        return Err(SymbolicError::Unsupported(format!("witness families need p <= n (p={p}, n={n})")));
    }
    let rank = generic_rank(map);
    if rank < p.min(n) {
        return Err(SymbolicError::NotMaximalRank { rank, expected: p.min(n) });
    }
    if coefficient_rank(map.components()) < n + 1 {
        return Err(SymbolicError::LinearlyDegenerate);
    }
    for set in witness_candidates(p, n)? {
        if wronskian_is_nonzero(&set, map.components())? {
            return Ok(set);
        }
    }
    Err(SymbolicError::WitnessNotFound)
}

/// `g = Σ_j a_j f_j`.
pub fn compose_linear_form(map: &ProjectiveMap, row: &[GaussianRational]) -> Result<Polynomial, SymbolicError> {
    if row.len() != map.n() + 1 {
        return Err(SymbolicError::DimensionMismatch { expected: map.n() + 1, got: row.len() });
    }
    let mut acc = Polynomial::zero(map.p());
    for (a, f) in row.iter().zip(map.components()) {
        if !a.is_zero() {
            acc = &acc + &f.scale(a);
        }
    }
    Ok(acc)
}

/// Verifies `W_S(g_R) = A_R · W_S(f)` exactly for the rows `R`.
///
/// Returns the minor `A_R` alongside the verdict; a singular row set is a
/// precondition violation.
pub fn wronskian_transfer_check(
    set: &OperatorSet,
    map: &ProjectiveMap,
    rows: &[Vec<GaussianRational>],
) -> Result<(bool, GaussianRational), SymbolicError> {
    if rows.len() != map.n() + 1 {
        return Err(SymbolicError::DimensionMismatch { expected: map.n() + 1, got: rows.len() });
    }
    let a_r = linalg::det(rows.to_vec());
    if a_r.is_zero() {
        return Err(SymbolicError::SingularRows);
    }
    let gs = rows.iter().map(|r| compose_linear_form(map, r)).collect::<Result<Vec<_>, _>>()?;
    let lhs = generalized_wronskian(set, &gs)?;
    let rhs = generalized_wronskian(set, map.components())?.scale(&a_r);
    Ok((lhs == rhs, a_r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse::parse_polynomial as pp;

    fn polys(p: usize, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| pp(x, p).unwrap()).collect()
    }

    #[test]
    fn wronskian_examples() {
        let s = OperatorSet::parse(2, &["", "1", "2"]).unwrap();
        let w = generalized_wronskian(&s, &polys(2, &["1", "z1", "z2"])).unwrap();
        assert_eq!(w, pp("1", 2).unwrap());

        let s1 = OperatorSet::parse(1, &["", "1", "11"]).unwrap();
        let w = generalized_wronskian(&s1, &polys(1, &["1", "z", "z^2"])).unwrap();
        assert_eq!(w, pp("2", 1).unwrap());

        let g = pp("z1^2 - 3*z2 + i", 2).unwrap();
        let scaled: Vec<Polynomial> = polys(2, &["1", "z1", "z2"]).iter().map(|f| f * &g).collect();
        assert_eq!(generalized_wronskian(&s, &scaled).unwrap(), g.pow(3));
    }

    #[test]
    fn independence_examples() {
        let r = is_linearly_independent(&polys(1, &["1", "z", "z^2"])).unwrap();
        assert!(r.independent);
        assert_eq!(r.witness.unwrap().to_string(), "{ε, 1, 11}");

        let r = is_linearly_independent(&polys(2, &["z1", "2*z1"])).unwrap();
        assert_eq!(r, Independence { independent: false, witness: None });

        let r = is_linearly_independent(&polys(2, &["1", "z1", "z2", "z1 + z2"])).unwrap();
        assert!(!r.independent && r.witness.is_none());
    }

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_rank(&ProjectiveMap::parse(2, &["1", "z1", "z2"]).unwrap()), 2);
        assert_eq!(generic_rank(&ProjectiveMap::parse(1, &["1", "z", "z^2"]).unwrap()), 1);
        assert_eq!(generic_rank(&ProjectiveMap::parse(2, &["1", "z1", "z1^2"]).unwrap()), 1);
        assert_eq!(generic_rank(&ProjectiveMap::parse(1, &["1", "3"]).unwrap()), 0);
    }

    #[test]
    fn witness_examples() {
        let m = ProjectiveMap::parse(1, &["1", "z", "z^2"]).unwrap();
        assert_eq!(find_witness_family(&m).unwrap().to_string(), "{ε, 1, 11}");
        let m = ProjectiveMap::parse(2, &["1", "z1", "z2"]).unwrap();
        assert_eq!(find_witness_family(&m).unwrap().to_string(), "{ε, 1, 2}");
        let m = ProjectiveMap::parse(2, &["1", "z1", "z1^2"]).unwrap();
        assert_eq!(find_witness_family(&m), Err(SymbolicError::NotMaximalRank { rank: 1, expected: 2 }));
        let m = ProjectiveMap::parse(2, &["1", "z1", "z2", "z1 + z2 + 1"]).unwrap();
        assert_eq!(find_witness_family(&m), Err(SymbolicError::LinearlyDegenerate));
    }

    #[test]
    fn linear_form_examples() {
        let m = ProjectiveMap::parse(1, &["1", "z", "z^2"]).unwrap();
        let row = |v: &[i64]| v.iter().map(|&x| GaussianRational::from_integer(x)).collect::<Vec<_>>();
        assert_eq!(compose_linear_form(&m, &row(&[0, 1, 0])).unwrap(), pp("z", 1).unwrap());
        assert_eq!(compose_linear_form(&m, &row(&[1, 1, 0])).unwrap(), pp("1 + z", 1).unwrap());
        assert_eq!(compose_linear_form(&m, &row(&[1, 0, 0])).unwrap(), pp("1", 1).unwrap());
        assert!(compose_linear_form(&m, &row(&[1, 0])).is_err());
    }

    #[test]
    fn transfer_examples() {
        let m = ProjectiveMap::parse(1, &["1", "z", "z^2"]).unwrap();
        let s = OperatorSet::parse(1, &["", "1", "11"]).unwrap();
        let row = |v: &[i64]| v.iter().map(|&x| GaussianRational::from_integer(x)).collect::<Vec<_>>();
        let id = vec![row(&[1, 0, 0]), row(&[0, 1, 0]), row(&[0, 0, 1])];
        assert_eq!(wronskian_transfer_check(&s, &m, &id).unwrap(), (true, GaussianRational::from_integer(1)));
        let tri = vec![row(&[1, 0, 0]), row(&[1, 1, 0]), row(&[1, 1, 1])];
        assert_eq!(wronskian_transfer_check(&s, &m, &tri).unwrap(), (true, GaussianRational::from_integer(1)));
        let rep = vec![row(&[1, 0, 0]), row(&[1, 0, 0]), row(&[1, 1, 1])];
        assert_eq!(wronskian_transfer_check(&s, &m, &rep), Err(SymbolicError::SingularRows));
    }

    #[test]
    fn relations() {
        let rel = linear_relations(&polys(1, &["1", "i", "z", "i*z"]));
        assert_eq!(rel.len(), 2);
        for r in rel {
            let combo = r.iter().zip(polys(1, &["1", "i", "z", "i*z"])).fold(Polynomial::zero(1), |acc, (c, f)| &acc + &f.scale(c));
            assert!(combo.is_zero());
        }
    }
}
