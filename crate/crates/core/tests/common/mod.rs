//! Test-side oracles, written independently of the library internals.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use holocurve::symbolic::{GaussianRational, Polynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gint(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_parts((re, 1), (im, 1))
}

pub fn small_gint(rng: &mut ChaCha8Rng, b: i64) -> GaussianRational {
    gint(rng.random_range(-b..=b), rng.random_range(-b..=b))
}

/// Random polynomial in `p` variables of total degree at most `deg` with
/// up to `terms` Gaussian-integer coefficients in `[-b, b]`.
pub fn random_poly(rng: &mut ChaCha8Rng, p: usize, deg: u32, terms: usize, b: i64) -> Polynomial {
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; p];
        let mut budget = rng.random_range(0..=deg);
        for slot in e.iter_mut() {
            let k = rng.random_range(0..=budget);
            *slot = k;
            budget -= k;
        }
        out.push((e, small_gint(rng, b)));
    }
    Polynomial::from_terms(p, out)
}

/// Exact Gaussian rationals as `(re, im)` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Qi(pub BigRational, pub BigRational);

impl Qi {
    pub fn from_g(g: &GaussianRational) -> Self {
        Qi(g.re.clone(), g.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    pub fn sub(&self, o: &Qi) -> Qi {
        Qi(&self.0 - &o.0, &self.1 - &o.1)
    }

    pub fn mul(&self, o: &Qi) -> Qi {
        Qi(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }

    pub fn inv(&self) -> Qi {
        let d = &self.0 * &self.0 + &self.1 * &self.1;
        Qi(&self.0 / &d, -(&self.1 / &d))
    }
}

/// Rank of the coefficient matrix of `fs` over `Q(i)`.
pub fn coefficient_rank(fs: &[Polynomial]) -> usize {
    let monos: BTreeSet<Vec<u32>> = fs.iter().flat_map(|f| f.terms().map(|(e, _)| e.clone())).collect();
    let monos: Vec<Vec<u32>> = monos.into_iter().collect();
    let mut m: Vec<Vec<Qi>> = fs
        .iter()
        .map(|f| monos.iter().map(|e| Qi::from_g(&f.coefficient(e))).collect())
        .collect();
    let (rows, cols) = (m.len(), monos.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, piv);
        let inv = m[rank][c].inv();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let factor = m[r][c].mul(&inv);
                for k in c..cols {
                    let t = factor.mul(&m[rank][k]);
                    m[r][k] = m[r][k].sub(&t);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `∂^α P` at `z`, computed term by term.
pub fn derivative_at(p: &Polynomial, alpha: &[u32], z: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    'terms: for (e, c) in p.terms() {
        let mut v = c.to_complex();
        for (j, (&ej, &aj)) in e.iter().zip(alpha).enumerate() {
            if aj > ej {
                continue 'terms;
            }
            for k in 0..aj {
                v *= f64::from(ej - k);
            }
            v *= z[j].powu(ej - aj);
        }
        acc += v;
    }
    acc
}

/// Complex determinant with partial pivoting.
pub fn det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut d = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| a[x][c].norm().total_cmp(&a[y][c].norm())).unwrap();
        if a[piv][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != c {
            a.swap(piv, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let t = f * a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

/// Multi-index of a word given as a string of letters `1..=p`.
pub fn multi_index(word: &str, p: usize) -> Vec<u32> {
    let mut a = vec![0u32; p];
    for ch in word.chars().filter(char::is_ascii_digit) {
        a[ch.to_digit(10).unwrap() as usize - 1] += 1;
    }
    a
}

/// Numeric generalized Wronskian at `z` for words given as letter strings.
pub fn wronskian_at(words: &[String], fs: &[Polynomial], z: &[Complex64]) -> Complex64 {
    let p = z.len();
    let m = words
        .iter()
        .map(|w| {
            let a = multi_index(w, p);
            fs.iter().map(|f| derivative_at(f, &a, z)).collect()
        })
        .collect();
    det(m)
}

/// Letter strings of the words of an operator set (`""` for the identity).
pub fn word_strings(set: &holocurve::words::OperatorSet) -> Vec<String> {
    set.words().iter().map(|w| w.letters().iter().map(|l| l.to_string()).collect()).collect()
}

/// All sorted words over `1..=p` of order at most `max`.
pub fn all_words(p: usize, max: usize) -> Vec<Vec<u16>> {
    fn go(p: u16, max: usize, start: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        out.push(cur.clone());
        if cur.len() == max {
            return;
        }
        for l in start..=p {
            cur.push(l);
            go(p, max, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(p as u16, max, 1, &mut Vec::new(), &mut out);
    out
}

/// Every sub-multiset of a sorted word.
pub fn all_subwords(w: &[u16]) -> BTreeSet<Vec<u16>> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << w.len()) {
        out.insert(w.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &l)| l).collect());
    }
    out
}

pub fn brute_is_full(set: &[Vec<u16>]) -> bool {
    let s: BTreeSet<&Vec<u16>> = set.iter().collect();
    set.iter().all(|w| all_subwords(w).iter().all(|sw| s.contains(sw)))
}

pub fn brute_is_admissible(set: &[Vec<u16>]) -> bool {
    let mut orders: Vec<usize> = set.iter().map(Vec::len).collect();
    orders.sort_unstable();
    orders.iter().enumerate().all(|(s, &o)| o <= s)
}

/// Brute force over all `(n+1)`-subsets of words of order at most `n`.
pub fn brute_admissible_full(p: usize, n: usize) -> BTreeSet<Vec<Vec<u16>>> {
    let words = all_words(p, n);
    let k = n + 1;
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if words.len() < k {
        return out;
    }
    loop {
        let set: Vec<Vec<u16>> = idx.iter().map(|&i| words[i].clone()).collect();
        if brute_is_admissible(&set) && brute_is_full(&set) {
            let mut s = set;
            s.sort();
            out.insert(s);
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + words.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact order of vanishing of a univariate polynomial at `a`.
pub fn order_at(p: &Polynomial, a: &GaussianRational) -> u32 {
    if p.is_zero() {
        return u32::MAX;
    }
    let mut d = p.clone();
    let mut k = 0;
    while d.eval_exact(std::slice::from_ref(a)).is_zero() {
        d = d.derivative(0);
        k += 1;
    }
    k
}
