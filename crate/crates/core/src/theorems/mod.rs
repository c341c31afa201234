//! Verification harnesses. Each check returns a [`VerificationReport`] with
//! a pass/fail verdict, per-radius margins where that makes sense, and a
//! map of named details.
//!
//! Acceptance thresholds that have no counterpart in the underlying
//! inequalities (the 0.05 ratio for the Second Main Theorem error term, the
//! +0.1 slack on the defect sum, the a-priori `max/median` factor) are
//! choices of this crate and are exposed as constants.

mod apriori;
mod exact;
mod fermat;
mod value_distribution;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nevanlinna::NevanlinnaError;
use crate::symbolic::{GaussianRational, SymbolicError};

pub use apriori::{apriori_ratio, check_apriori_estimate, AprioriSettings, DEFAULT_APRIORI_FACTOR};
pub use exact::{check_pole_order_bound, check_vanishing_estimate};
pub use fermat::{fermat_omit_check, fermat_section_check};
pub use value_distribution::{
    check_fmt, check_fmt_profile, check_smt, check_smt_profile, defects, defects_profile, fit_error_term,
    ramification_check, smt_preconditions, DEFAULT_FMT_BAND, DEFECT_SLACK, SMT_RATIO,
};

/// `κ(p, n) = max(n + 1 − p, 1)`.
pub fn kappa(p: usize, n: usize) -> usize {
    assert!(p >= 1 && n >= 1, "kappa needs p, n >= 1");
    (n + 1).saturating_sub(p).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaParams {
    pub p: usize,
    pub n: usize,
    pub kappa: usize,
}

impl KappaParams {
    pub fn new(p: usize, n: usize) -> Self {
        KappaParams { p, n, kappa: kappa(p, n) }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TheoremError {
    #[error("need q >= n + 2 hyperplanes, got q = {q} for n = {n}")]
    TooFewHyperplanes { q: usize, n: usize },
    #[error("hyperplanes {rows:?} are not in general position")]
    NotGeneralPosition { rows: Vec<usize> },
    #[error("map is degenerate: {reason}")]
    DegenerateMap { reason: String },
    #[error("map has generic rank {rank}, maximal rank is {expected}")]
    NotMaximalRank { rank: usize, expected: usize },
    #[error("image is not contained in the Fermat hypersurface of degree {d}: sum of d-th powers is {residual}")]
    NotOnFermat { d: u32, residual: String },
    #[error("map does not omit the Fermat hypersurface of degree {d}: sum of d-th powers is {residual}")]
    DoesNotOmit { d: u32, residual: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Nevanlinna(#[from] NevanlinnaError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

impl From<crate::words::WordError> for TheoremError {
    fn from(e: crate::words::WordError) -> Self {
        TheoremError::Symbolic(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    Fmt,
    Smt,
    Defects,
    Ramification,
    FermatSection,
    FermatOmit,
    PoleOrder,
    Vanishing,
    Apriori,
    Witness,
    Profile,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        f.write_str(s.as_str().unwrap())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Nonnegative least-squares fit of a violation term to `c1·log T + c2·log r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorTermFit {
    pub c1: f64,
    pub c2: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub radii: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub margins: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<ErrorTermFit>,
    pub violation_radii: Vec<f64>,
    pub details: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: TheoremId) -> Self {
        VerificationReport {
            theorem,
            verdict: Verdict::Fail,
            radii: Vec::new(),
            margins: Vec::new(),
            fit: None,
            violation_radii: Vec::new(),
            details: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub(crate) fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(value).expect("serializable detail"));
    }

    pub fn get(&self, key: &str) -> Option<&serde_json::Value> {
        self.details.get(key)
    }
}

/// Smallest multiplicity of a divisor per hyperplane, `None` meaning the
/// image avoids it (μ = ∞).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationEstimate {
    #[serde(with = "mu_serde")]
    pub mu: Vec<Option<u32>>,
    /// Whether the values come from sampled lines (`p ≥ 2`).
    pub sampled: bool,
}

impl RamificationEstimate {
    /// `Σ (1 − κ/μ_i)` with `μ = ∞` contributing 1.
    pub fn defect_sum(&self, kappa: usize) -> f64 {
        self.mu
            .iter()
            .map(|m| match m {
                None => 1.0,
                Some(m) => 1.0 - kappa as f64 / f64::from(*m),
            })
            .sum()
    }
}

mod mu_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Mu {
        Finite(u32),
        Inf(String),
    }

    pub fn serialize<S: Serializer>(v: &[Option<u32>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|m| m.map_or(Mu::Inf("inf".into()), Mu::Finite))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Option<u32>>, D::Error> {
        Ok(Vec::<Mu>::deserialize(d)?
            .into_iter()
            .map(|m| match m {
                Mu::Finite(k) => Some(k),
                Mu::Inf(_) => None,
            })
            .collect())
    }
}

/// `c_0*w0 + c_1*w1 + …`, skipping zero coefficients.
pub(crate) fn format_linear_form(coeffs: &[GaussianRational]) -> String {
    use num_traits::{One, Zero};
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| if c.is_one() { format!("w{j}") } else { format!("{c}*w{j}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(1, 3), 3);
        assert_eq!(kappa(3, 3), 1);
        assert_eq!(kappa(2, 5), 4);
        assert_eq!(kappa(5, 2), 1);
        assert_eq!(KappaParams::new(2, 4).kappa, 3);
    }

    #[test]
    fn ramification_sum_convention() {
        let est = RamificationEstimate { mu: vec![None, Some(1), Some(2)], sampled: false };
        assert!((est.defect_sum(1) - 1.5).abs() < 1e-15);
        let json = serde_json::to_string(&est).unwrap();
        assert_eq!(json, r#"{"mu":["inf",1,2],"sampled":false}"#);
        assert_eq!(serde_json::from_str::<RamificationEstimate>(&json).unwrap(), est);
    }

    #[test]
    fn theorem_ids_are_kebab_case() {
        assert_eq!(TheoremId::FermatSection.to_string(), "fermat-section");
        assert_eq!(Verdict::Pass.to_string(), "PASS");
    }
}
