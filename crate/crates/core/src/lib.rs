//! Exact nonnegative integer solutions of `A x = b` by lattice box reduction.
//!
//! Given `A = (B | N)` with `B` nonsingular, [`solver::solve`] either proves
//! that `A x = b` has no integer solution, or returns the integer solution
//! whose last `n - m` coordinates are the canonical box representative of
//! the projected solution lattice. That solution is nonnegative whenever `b`
//! lies far enough inside the cone spanned by the columns of `B`;
//! [`cone`] and [`frobenius`] check the known sufficient conditions exactly.
//!
//! All arithmetic is arbitrary precision and exact.

pub mod arith;
pub mod cli;
pub mod cone;
pub mod error;
pub mod frobenius;
pub mod generate;
pub mod lattice;
pub mod oracle;
pub mod solver;

pub use arith::{IntMatrix, Integer, Rational};
pub use error::{Error, Result};
pub use solver::{solve, verify, ProblemInstance, SolveOutcome};
