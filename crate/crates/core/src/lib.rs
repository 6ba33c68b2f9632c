//! Generalized Mobius functions attached to automorphic L-functions.
//!
//! The crate computes mu_pi(n), the Dirichlet coefficients of 1/L(s, pi),
//! for representations built from symmetric powers of the level-one
//! holomorphic eigenforms and from Maass-form eigenvalue data, and runs the
//! desk-scale experiments around them: exact decomposition identities,
//! Mertens-type prime sums, inequality grids, and partial-sum decay trends.
//!
//! Layering:
//!
//! * [`qseries`] - exact integer q-expansions (the only arbitrary-precision
//!   layer; everything numeric downstream is binary64)
//! * [`hecke`] - eigenvalue normalization and Satake parameters
//! * [`repalg`] - the representation-expression DSL and exact exponent
//!   multiset combinatorics
//! * [`localfactor`] - per-prime lambda(p) and mu(p^a)
//! * [`sieve`] - multiplicative extension to mu(n), partial sums,
//!   correlations
//! * [`maass`] - Maass eigenvalue data files
//! * [`experiments`] - the quantitative experiment suite
//! * [`registry`] / [`report`] - session data and CSV/JSON emission

pub mod error;
pub mod experiments;
pub mod hecke;
pub mod localfactor;
pub mod maass;
pub mod primes;
pub mod qseries;
pub mod registry;
pub mod repalg;
pub mod report;
pub mod sieve;

pub use error::{Error, Result};
pub use registry::FormRegistry;
pub use repalg::{parse_rep, FormId, RepExpr};
pub use sieve::{mobius_table, MobiusTable, XiSpec};
