//! Exact verification kernel for generalized Lie structures.
//!
//! Everything here computes over the rationals with arbitrary precision, so
//! every identity check is a decision rather than an approximation. The
//! crate is organized bottom-up:
//!
//! * [`exactmath`]: rationals, multivariate polynomials, dense rational
//!   matrices and fraction-free elimination.
//! * [`bracket`]: brackets given by structure constants, the Lie/Loday
//!   identity checkers and bracket-producing constructions (flip,
//!   D-generated brackets, hemisemidirect products, the omni-Lie bracket).
//! * [`quasider`]: commutative algebras acting on modules, quasi-derivations
//!   and the induced derivation ("hat") of the coefficient algebra.
//! * [`algebroid`]: adjoint maps, anchors, classification of Loday
//!   quasi-algebroids, the omni-Loday bracket and the graph-closure theorems.
//! * [`exterior`]: polynomial differential forms, the exterior derivative,
//!   contraction, Lie derivative and the Dorfman bracket.
//! * [`corpus`] and [`suites`]: built-in instances and seeded randomized
//!   equivalence suites.

pub mod algebroid;
pub mod bracket;
pub mod corpus;
pub mod exactmath;
pub mod exterior;
pub mod quasider;
pub mod sampling;
pub mod suites;

mod report;

pub use exactmath::{MultiPoly, RatMatrix, Rational};
pub use report::{IdentityReport, Verdict, Witness};

/// Default seed for every randomized check.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch in {context}: expected {expected}, found {found}")]
    Shape {
        context: &'static str,
        expected: String,
        found: String,
    },
    #[error("precondition failed: {what}{}", fmt_witness(.witness))]
    Precondition {
        what: String,
        witness: Option<Witness>,
    },
    #[error("{condition} violated ({witness})")]
    ConditionViolated { condition: String, witness: Witness },
    #[error("invariant violated: {what}{}", fmt_witness(.witness))]
    InvariantViolation {
        what: String,
        witness: Option<Witness>,
    },
}

fn fmt_witness(w: &Option<Witness>) -> String {
    match w {
        Some(w) => format!(" ({w})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn shape(context: &'static str, expected: impl ToString, found: impl ToString) -> Self {
        Error::Shape {
            context,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn precondition(what: impl Into<String>, witness: Option<Witness>) -> Self {
        Error::Precondition {
            what: what.into(),
            witness,
        }
    }

    pub(crate) fn invariant(what: impl Into<String>, witness: Option<Witness>) -> Self {
        Error::InvariantViolation {
            what: what.into(),
            witness,
        }
    }

    /// True for errors that mean a mathematical statement was falsified.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
