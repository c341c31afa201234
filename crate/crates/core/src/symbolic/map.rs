//! Reduced polynomial maps `C^p → P^n` and hyperplane families in `P^n`.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::gaussian::GaussianRational;
use super::gcd::gcd_many;
use super::linalg;
use super::parse::parse_polynomial;
use super::poly::{NumericPolynomial, Polynomial};
use super::SymbolicError;

/// A reduced representation `[f_0 : … : f_n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjectiveMap {
    p: usize,
    components: Vec<Polynomial>,
}

impl ProjectiveMap {
    /// Validates arity, that not every component vanishes, and that the
    /// components have no nonconstant common factor.
    pub fn new(p: usize, components: Vec<Polynomial>) -> Result<Self, SymbolicError> {
        let map = Self::unreduced(p, components)?;
        let g = gcd_many(&map.components);
        if !g.is_constant() {
            return Err(SymbolicError::NotReduced { common_factor: g.to_string() });
        }
        Ok(map)
    }

    /// Checks arity and nonvanishing only.
    pub(crate) fn unreduced(p: usize, components: Vec<Polynomial>) -> Result<Self, SymbolicError> {
        if components.len() < 2 {
            return Err(SymbolicError::TooFewComponents(components.len()));
        }
        if let Some(bad) = components.iter().find(|c| c.nvars() != p) {
            return Err(SymbolicError::ArityMismatch { expected: p, got: bad.nvars() });
        }
        if components.iter().all(Polynomial::is_zero) {
            return Err(SymbolicError::ZeroMap);
        }
        Ok(ProjectiveMap { p, components })
    }

    /// Parses component literals, e.g. `ProjectiveMap::parse(1, &["1", "z", "z^2"])`.
    pub fn parse(p: usize, components: &[&str]) -> Result<Self, SymbolicError> {
        let comps = components
            .iter()
            .map(|s| parse_polynomial(s, p))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(p, comps)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Target dimension.
    pub fn n(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub fn numeric(&self) -> NumericMap {
        NumericMap { components: self.components.iter().map(NumericPolynomial::new).collect() }
    }
}

impl fmt::Display for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" : ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjectiveMap(p={}, {self})", self.p)
    }
}

/// Floating-point evaluator for a [`ProjectiveMap`].
#[derive(Clone, Debug)]
pub struct NumericMap {
    components: Vec<NumericPolynomial>,
}

impl NumericMap {
    pub fn eval(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    /// `‖f(z)‖_max = max_j |f_j(z)|`.
    pub fn norm_max(&self, z: &[Complex64]) -> f64 {
        self.components.iter().map(|c| c.eval(z).norm()).fold(0.0, f64::max)
    }
}

/// `q` linear forms `H_i^*(ω) = Σ_j a_ij ω_j` on `C^{n+1}`.
///
/// Coefficients are exact. The numeric pipeline reads them through
/// [`HyperplaneFamily::numeric_rows`], which rescales each row to unit
/// Euclidean norm when `normalized` is set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HyperplaneFamily {
    n: usize,
    rows: Vec<Vec<GaussianRational>>,
    normalized: bool,
}

impl HyperplaneFamily {
    /// Builds a family and checks general position: all `(n+1)`-minors are
    /// nonzero (or, for `q ≤ n+1`, the rows are independent).
    pub fn new(rows: Vec<Vec<GaussianRational>>) -> Result<Self, SymbolicError> {
        let fam = Self::unchecked(rows)?;
        if let Some(subset) = fam.general_position_violation() {
            return Err(SymbolicError::NotGeneralPosition { rows: subset });
        }
        Ok(fam)
    }

    /// Builds a family checking only shape and that no row is zero.
    pub fn unchecked(rows: Vec<Vec<GaussianRational>>) -> Result<Self, SymbolicError> {
        let width = rows.first().map(Vec::len).ok_or(SymbolicError::EmptyFamily)?;
        if width < 2 {
            return Err(SymbolicError::EmptyFamily);
        }
        if let Some(r) = rows.iter().find(|r| r.len() != width) {
            return Err(SymbolicError::DimensionMismatch { expected: width, got: r.len() });
        }
        if let Some(i) = rows.iter().position(|r| r.iter().all(Zero::is_zero)) {
            return Err(SymbolicError::ZeroHyperplane(i));
        }
        Ok(HyperplaneFamily { n: width - 1, rows, normalized: true })
    }

    /// Rows given as integer vectors.
    pub fn from_integers(rows: &[&[i64]]) -> Result<Self, SymbolicError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| GaussianRational::from_integer(v)).collect()).collect())
    }

    pub fn with_normalization(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<GaussianRational>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.rows[i]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Each row scaled by an exact factor.
    pub fn scaled(&self, factor: &GaussianRational) -> Self {
        HyperplaneFamily {
            n: self.n,
            rows: self.rows.iter().map(|r| r.iter().map(|a| a * factor).collect()).collect(),
            normalized: self.normalized,
        }
    }

    /// Rows in floating point, unit-norm when the family is normalized.
    pub fn numeric_rows(&self) -> Vec<Vec<Complex64>> {
        self.rows
            .iter()
            .map(|r| {
                let v: Vec<Complex64> = r.iter().map(GaussianRational::to_complex).collect();
                if !self.normalized {
                    return v;
                }
                let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                v.into_iter().map(|a| a / norm).collect()
            })
            .collect()
    }

    /// The linear form of row `i` as a polynomial in `w_0..w_n`.
    pub fn linear_form(&self, i: usize) -> Polynomial {
        let n1 = self.n + 1;
        Polynomial::from_terms(
            n1,
            self.rows[i].iter().enumerate().map(|(j, a)| {
                let mut e = vec![0; n1];
                e[j] = 1;
                (e, a.clone())
            }),
        )
    }

    /// Exact minor `A_R` for a set of row indices.
    pub fn minor(&self, subset: &[usize]) -> GaussianRational {
        linalg::det(subset.iter().map(|&i| self.rows[i].clone()).collect())
    }

    /// First `(n+1)`-subset of rows with vanishing minor, if any.
    pub fn general_position_violation(&self) -> Option<Vec<usize>> {
        let k = self.n + 1;
        if self.rows.len() < k {
            return (linalg::rank(&self.rows) < self.rows.len()).then(|| (0..self.rows.len()).collect());
        }
        subsets(self.rows.len(), k).find(|s| self.minor(s).is_zero())
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_representation_is_enforced() {
        assert!(ProjectiveMap::parse(1, &["1", "z"]).is_ok());
        assert!(matches!(ProjectiveMap::parse(1, &["z", "z^2"]), Err(SymbolicError::NotReduced { .. })));
        assert!(matches!(ProjectiveMap::parse(2, &["z1*z2", "z1^2"]), Err(SymbolicError::NotReduced { .. })));
        assert!(matches!(ProjectiveMap::parse(1, &["0", "0"]), Err(SymbolicError::ZeroMap)));
        assert!(ProjectiveMap::parse(2, &["z1", "z2"]).is_ok());
    }

    #[test]
    fn general_position() {
        assert!(HyperplaneFamily::from_integers(&[&[1, 0], &[0, 1], &[1, 1]]).is_ok());
        assert!(matches!(
            HyperplaneFamily::from_integers(&[&[1, 0], &[0, 1], &[2, 0]]),
            Err(SymbolicError::NotGeneralPosition { .. })
        ));
        let fam = HyperplaneFamily::from_integers(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let rows = fam.numeric_rows();
        let norm: f64 = rows[3].iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
    }

    #[test]
    fn subset_enumeration() {
        let all: Vec<_> = subsets(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(subsets(3, 3).count(), 1);
        assert_eq!(subsets(2, 3).count(), 0);
    }
}
