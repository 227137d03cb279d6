//! Exact scalar, polynomial and linear-algebra kernel. No floating point.

pub mod matrix;
pub mod poly;
pub mod rational;
pub mod solve;
pub mod vector;

pub use matrix::{mat_commutator, RatMatrix};
pub use poly::{poly_eval_identity, MultiPoly};
pub use rational::{parse_rational, rat, ratio, ParseRationalError, Rational};
pub use solve::{nullspace, rank, solve_linear, solve_preimage, SpanSolver};
