//! Exact combinatorics of staircase tableaux and the open-boundary ASEP.
//!
//! Everything here is computed over exact arbitrary-precision rationals;
//! no floating point is used anywhere. The crate provides:
//!
//! * sparse multivariate polynomials in the seven indeterminates
//!   `alpha, beta, gamma, delta, q, u, z` ([`poly`]),
//! * ASEP states (words over filled/empty sites) and their symmetries
//!   ([`state`]),
//! * type A staircase tableaux: the q/u filling, weights, the insertion
//!   bijection with its inverse, enumeration, and colored inversion tables
//!   ([`tableau_a`]),
//! * type B (half) staircase tableaux with the same toolkit ([`tableau_b`]),
//! * state-weight recurrences, preimage tables, and matrix-ansatz equation
//!   checkers ([`ansatz`]),
//! * the exact ASEP Markov chain and its stationary distribution, used as an
//!   independent oracle ([`markov`]),
//! * report-producing verification suites shared by the CLI and the
//!   acceptance tests ([`verify`]).

pub mod ansatz;
pub mod markov;
pub mod poly;
pub mod report;
pub mod state;
pub mod tableau_a;
pub mod tableau_b;
pub mod verify;

pub use poly::{Monomial, ParamPoint, Polynomial, Var};
pub use report::{Failure, Report};
pub use state::{Letter, State, SymmetryKind};
pub use tableau_a::{InsertionEvent, Label, LabelSet, StaircaseTableau};
pub use tableau_b::HalfTableauB;

/// Error for malformed textual or JSON input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error: {0}")]
pub struct ParseError(pub String);
