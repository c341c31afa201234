//! Exact polynomial algebra over the Gaussian rationals: derivatives,
//! generalized Wronskians, independence and rank tests, hyperplane
//! composition, and the Fermat power endomorphism.
//!
//! Everything here is exact. Hyperplanes are kept unnormalized (unit-norm
//! rows would need square roots); every identity checked in this module is
//! covariant under rescaling rows, and normalization happens only when the
//! numeric pipeline reads the rows.

mod fermat;
mod gaussian;
pub mod gcd;
pub mod linalg;
mod map;
pub mod parse;
mod poly;
mod wronskian;

use thiserror::Error;

pub use fermat::{fermat_form, fermat_membership, fermat_push, FermatPush};
pub use gaussian::GaussianRational;
pub use map::{subsets, HyperplaneFamily, NumericMap, ProjectiveMap};
pub use parse::{parse_polynomial, parse_scalar, ParseError};
pub use poly::{Monomial, NumericPolynomial, Polynomial};
pub use wronskian::{
    coefficient_rank, compose_linear_form, find_witness_family, generalized_wronskian, generic_rank,
    is_linearly_independent, linear_relations, wronskian_is_nonzero, wronskian_transfer_check, Independence,
};

use crate::words::WordError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("polynomial arity {got} does not match p = {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("a map into P^n needs at least 2 components, got {0}")]
    TooFewComponents(usize),
    #[error("all components vanish identically")]
    ZeroMap,
    #[error("representation is not reduced: components share the factor {common_factor}")]
    NotReduced { common_factor: String },
    #[error("hyperplane family is empty")]
    EmptyFamily,
    #[error("hyperplane {0} has all coefficients zero")]
    ZeroHyperplane(usize),
    #[error("hyperplanes {rows:?} are not in general position")]
    NotGeneralPosition { rows: Vec<usize> },
    #[error("selected rows have zero determinant")]
    SingularRows,
    #[error("map has generic rank {rank}, maximal rank is {expected}")]
    NotMaximalRank { rank: usize, expected: usize },
    #[error("map is linearly degenerate")]
    LinearlyDegenerate,
    #[error(
        "internal: rank oracle says independent={rank_says_independent} but Wronskian search found {witness:?}"
    )]
    WronskianDiscrepancy { rank_says_independent: bool, witness: Option<String> },
    #[error("internal: no admissible full set with nonzero Wronskian for a nondegenerate maximal-rank map")]
    WitnessNotFound,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Words(#[from] WordError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
