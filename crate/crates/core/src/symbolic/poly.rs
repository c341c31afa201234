//! Sparse multivariate polynomials over `Q(i)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use crate::words::Word;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in `z_1,…,z_p` with Gaussian-rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
/// in lexicographic monomial order (`z_1 > z_2 > …`) and the last entry is
/// the leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::one())
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The coordinate `z_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, GaussianRational::one())
    }

    pub fn monomial(exponents: Monomial, c: GaussianRational) -> Self {
        let mut p = Self::zero(exponents.len());
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, GaussianRational)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has wrong arity");
            p.add_term(e, &c);
        }
        p
    }

    /// Dense univariate constructor, coefficients in ascending degree.
    pub fn univariate(coeffs: &[GaussianRational]) -> Self {
        Self::from_terms(1, coeffs.iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())))
    }

    fn add_term(&mut self, e: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(GaussianRational::zero))
    }

    pub fn coefficient(&self, e: &[u32]) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Whether any term involves variable `var`.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Leading term in lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&GaussianRational> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Largest coefficient modulus, `max |c|` over all terms.
    pub fn max_coefficient_norm(&self) -> f64 {
        self.terms.values().map(|c| c.to_complex().norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Divides out the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `∂/∂z_{var+1}`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, &(c * &GaussianRational::from_integer(e[var] as i64)));
        }
        out
    }

    /// Applies the operator encoded by `word`, one partial per letter.
    pub fn differentiate(&self, word: &Word) -> Self {
        let alpha = word.multi_index(self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(&alpha).any(|(&x, &a)| x < a) {
                continue;
            }
            // falling factorial per variable
            let mut factor: i64 = 1;
            let mut e2 = e.clone();
            for (x, &a) in e2.iter_mut().zip(&alpha) {
                for k in 0..a {
                    factor *= (*x - k) as i64;
                }
                *x -= a;
            }
            out.add_term(e2, &(c * &GaussianRational::from_integer(factor)));
        }
        out
    }

    /// Exact evaluation at a point of `Q(i)^p`.
    pub fn eval_exact(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Floating-point evaluation.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.to_numeric().eval(point)
    }

    pub fn to_numeric(&self) -> NumericPolynomial {
        NumericPolynomial::new(self)
    }

    /// Substitutes `args[j]` for variable `j`; all args share one arity.
    pub fn compose(&self, args: &[Polynomial]) -> Polynomial {
        assert_eq!(args.len(), self.nvars, "compose needs one argument per variable");
        let target = args.first().map_or(0, |a| a.nvars);
        let mut cache: Vec<Vec<Polynomial>> = args.iter().map(|a| vec![Polynomial::one(a.nvars), a.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (j, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[j].len() <= k as usize {
                    let next = cache[j].last().unwrap() * &args[j];
                    cache[j].push(next);
                }
                t = &t * &cache[j][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Restriction `t ↦ g(t·u)` to the complex line spanned by `u`.
    pub fn restrict_to_line(&self, direction: &[GaussianRational]) -> Polynomial {
        assert_eq!(direction.len(), self.nvars);
        let mut out = Polynomial::zero(1);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in direction.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            out.add_term(vec![e.iter().sum()], &t);
        }
        out
    }

    /// Coefficients with respect to `var`: `self = Σ_k coeffs[k] · z_var^k`,
    /// each coefficient free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Polynomial::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                out.add_term(e2, v);
            }
        }
        out
    }

    /// `self · z^shift` for an exponent vector `shift`.
    pub fn shift(&self, shift: &[u32]) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term() {
            if e.iter().zip(lm).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Monomial = e.iter().zip(lm).map(|(a, b)| a - b).collect();
            let qc = c * &lc_inv;
            let step = divisor.shift(&qe).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qe, &qc);
        }
        Some(quot)
    }

    /// Univariate division with remainder (single-variable polynomials over a
    /// field).
    pub fn div_rem_univariate(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert_eq!(self.nvars, 1);
        let (lm, lc) = divisor.leading_term().expect("division by zero polynomial");
        let d = lm[0];
        let lc_inv = lc.inv().unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(1);
        while let Some((e, c)) = rem.leading_term() {
            if e[0] < d {
                break;
            }
            let qe = vec![e[0] - d];
            let qc = c * &lc_inv;
            rem = &rem - &divisor.shift(&qe).scale(&qc);
            quot.add_term(qe, &qc);
        }
        (quot, rem)
    }

    /// Dense ascending coefficients of a univariate polynomial.
    pub fn dense_coefficients(&self) -> Vec<GaussianRational> {
        assert_eq!(self.nvars, 1, "dense_coefficients needs a univariate polynomial");
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![GaussianRational::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        out
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars, "arity mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

fn var_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "z".to_string()
    } else {
        format!("z{}", i + 1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest term first reads naturally
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        var_name(self.nvars, i)
                    } else {
                        format!("{}^{}", var_name(self.nvars, i), x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                f.write_str(&mono.join("*"))?;
            } else if (-c).is_one() {
                write!(f, "-{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.nvars)
    }
}

/// Floating-point image of a [`Polynomial`] for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumericPolynomial {
    nvars: usize,
    max_exp: Vec<u32>,
    terms: Vec<(Monomial, Complex64)>,
}

impl NumericPolynomial {
    pub fn new(p: &Polynomial) -> Self {
        let mut max_exp = vec![0u32; p.nvars];
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| {
                for (m, &x) in max_exp.iter_mut().zip(e) {
                    *m = (*m).max(x);
                }
                (e.clone(), c.to_complex())
            })
            .collect();
        NumericPolynomial { nvars: p.nvars, max_exp, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        debug_assert_eq!(point.len(), self.nvars);
        if self.nvars == 1 {
            // Horner on the sparse term list, highest degree first
            let z = point[0];
            let mut acc = Complex64::new(0.0, 0.0);
            let mut last = match self.terms.last() {
                Some((e, _)) => e[0],
                None => return acc,
            };
            for (e, c) in self.terms.iter().rev() {
                acc *= z.powu(last - e[0]);
                acc += c;
                last = e[0];
            }
            return acc * z.powu(last);
        }
        let powers: Vec<Vec<Complex64>> = point
            .iter()
            .zip(&self.max_exp)
            .map(|(&z, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                v.push(acc);
                for _ in 0..m {
                    acc *= z;
                    v.push(acc);
                }
                v
            })
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = *c;
            for (pw, &k) in powers.iter().zip(e) {
                if k > 0 {
                    t *= pw[k as usize];
                }
            }
            acc += t;
        }
        acc
    }
}
