//! Exact determinants, ranks and null spaces.
//!
//! Scalar matrices over `Q(i)` use ordinary Gaussian elimination. Matrices of
//! polynomials use fraction-free (Bareiss) elimination so every intermediate
//! entry stays a polynomial: each update divides exactly by the previous
//! pivot.

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::poly::Polynomial;

/// Determinant of a square scalar matrix.
pub fn det(mut m: Vec<Vec<GaussianRational>>) -> GaussianRational {
    let n = m.len();
    let mut acc = GaussianRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return GaussianRational::zero();
        };
        if piv != k {
            m.swap(piv, k);
            acc = -acc;
        }
        let inv = m[k][k].inv().unwrap();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] * &inv;
            for j in k..n {
                let t = &factor * &m[k][j];
                m[i][j] -= &t;
            }
        }
        acc = &acc * &m[k][k];
    }
    acc
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<GaussianRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for j in 0..cols {
                let t = &factor * &m[r][j];
                m[i][j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<GaussianRational>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Basis of `{x : m·x = 0}`.
pub fn null_space(m: &[Vec<GaussianRational>], cols: usize) -> Vec<Vec<GaussianRational>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GaussianRational::zero(); cols];
            v[f] = GaussianRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&work[r][f];
            }
            v
        })
        .collect()
}

fn pick_pivot(m: &[Vec<Polynomial>], rows: std::ops::Range<usize>, col: usize) -> Option<usize> {
    // sparsest nonzero entry keeps the products small
    rows.filter(|&i| !m[i][col].is_zero()).min_by_key(|&i| m[i][col].num_terms())
}

/// Determinant of a square polynomial matrix by Bareiss elimination.
pub fn det_polynomial(mut m: Vec<Vec<Polynomial>>, nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut negate = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..n - 1 {
        let Some(piv) = pick_pivot(&m, k..n, k) else {
            return Polynomial::zero(nvars);
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).unwrap_or_else(|| {
                    if num.is_zero() {
                        Polynomial::zero(nvars)
                    } else {
                        panic!("Bareiss step not exact")
                    }
                });
            }
            m[i][k] = Polynomial::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Rank over the fraction field of a polynomial matrix, i.e. the generic
/// rank of the matrix as a function of `z`.
pub fn rank_polynomial(mut m: Vec<Vec<Polynomial>>, nvars: usize) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = Polynomial::one(nvars);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = pick_pivot(&m, r..rows, c) else {
            continue;
        };
        m.swap(piv, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &(&m[i][j] * &m[r][c]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = if num.is_zero() {
                    num
                } else {
                    num.div_exact(&prev).expect("fraction-free step not exact")
                };
            }
            m[i][c] = Polynomial::zero(nvars);
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}
