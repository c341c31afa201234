//! Symbolic-numeric toolkit for value distribution of polynomial maps
//! `f: C^p → P^n`.
//!
//! - [`words`]: derivative words, admissible and full operator sets.
//! - [`symbolic`]: exact polynomials over `Q(i)`, generalized Wronskians,
//!   rank and independence tests, Fermat constructions.
//! - [`nevanlinna`]: order, proximity and (truncated) counting functions on
//!   radius grids.
//! - [`theorems`]: verification harnesses producing [`theorems::VerificationReport`]s.
//! - [`cli`]: JSON scenarios, the bundled corpus, and report writers.
//!
//! Each capability has a runnable program under `examples/`.

pub mod cli;
pub mod nevanlinna;
pub mod symbolic;
pub mod theorems;
pub mod words;
