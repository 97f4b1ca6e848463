//! Error type shared by all modules.

use std::fmt;

/// Errors reported by the library.
///
/// Validation failures (bad parameters, shape mismatches, broken side
/// conditions) are distinguished from numerical failures (a truncation or
/// quadrature target that could not be certified within the iteration
/// budget); callers such as the CLI map the two groups to different exit
/// codes.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside its admissible range.
    InvalidParameter(String),
    /// A sequence has the wrong length for the requested operation.
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    /// The multiplier rows violate the structural side conditions
    /// (first-row entries λ₀ = 1, μ₀ = 0).
    MultiplierCondition(String),
    /// ‖φ‖₂ exceeds 1: the function is not a member of the class.
    ClassMembership { norm: f64 },
    /// A custom ψ-sequence failed its spot checks (tail not a majorant,
    /// or not non-increasing).
    CustomTailRejected(String),
    /// The truncation bound could not be pushed below the requested
    /// tolerance within the term budget. `achieved` is the rigorous bound
    /// that was reached.
    Truncation {
        requested: f64,
        achieved: f64,
        terms: u64,
    },
    /// Adaptive quadrature did not converge to the requested tolerance.
    QuadratureNonConvergence { requested: f64, achieved: f64 },
    /// The convexity prefix check required by the uniform-error evaluator
    /// failed; `first_violation` is the first index with a negative second
    /// difference.
    ConvexityNotEstablished { first_violation: u64 },
    /// The dual kernel is identically zero: the worst-case error is 0 and
    /// there is no extremal function to normalize.
    DegenerateKernel,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::ShapeMismatch {
                what,
                expected,
                actual,
            } => write!(f, "shape mismatch: {what}: expected {expected}, got {actual}"),
            Error::MultiplierCondition(msg) => write!(f, "multiplier condition violated: {msg}"),
            Error::ClassMembership { norm } => {
                write!(f, "class membership violated: ‖φ‖₂ = {norm} exceeds 1")
            }
            Error::CustomTailRejected(msg) => write!(f, "custom tail rejected: {msg}"),
            Error::Truncation {
                requested,
                achieved,
                terms,
            } => write!(
                f,
                "truncation failure: requested bound {requested:e}, achieved {achieved:e} after {terms} terms"
            ),
            Error::QuadratureNonConvergence {
                requested,
                achieved,
            } => write!(
                f,
                "quadrature did not converge: requested {requested:e}, achieved {achieved:e}"
            ),
            Error::ConvexityNotEstablished { first_violation } => write!(
                f,
                "convexity prefix check failed at m = {first_violation}; the uniform-error formula requires a convex block-mass sequence"
            ),
            Error::DegenerateKernel => {
                write!(f, "dual kernel is identically zero (error value is 0)")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
