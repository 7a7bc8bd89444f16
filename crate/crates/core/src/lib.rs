//! Anti-unification over the simply-typed λ-calculus.
//!
//! The crate is layered:
//!
//! - [`kernel`]: types, η-long β-normal terms, parsing, normalization,
//!   positions and capture-avoiding substitution.
//! - [`au`]: generalization witnesses, the least general pattern
//!   generalization, pattern matching and fuel-bounded higher-order matching.
//! - [`superpattern`]: membership in the superpattern fragment.
//! - [`nullarity`]: tightening, lifting, pseudo-patterns and the strictly
//!   descending chain of generalizations that shows no minimal complete set
//!   exists for `λx.λy.f(x) ≜ λx.λy.f(y)`.
//! - [`golden`]: the worked examples as a self-checking suite.
//! - [`cli`]: the command-line front end used by the `lambda-au` binary.

pub mod au;
pub mod cli;
mod error;
pub mod gen;
pub mod golden;
pub mod kernel;
pub mod nullarity;
pub mod superpattern;

pub use error::{Error, Result};
