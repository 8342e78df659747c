//! Error type for the jet-differential constructor.

use core_poly::PolyError;
use jetfiber::JetFiberError;
use num::BigInt;
use thiserror::Error;

/// Failures of elimination, counting, assembly and certificate handling.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    /// `∂f/∂x_1` vanishes identically.
    #[error("degenerate polynomial: df/dx1 vanishes identically")]
    DegenerateF,
    /// An argument lies outside the range where an operation is defined.
    #[error("range violation: {0}")]
    RangeViolation(String),
    /// The grading hypothesis `m0 + 2m < δ` fails.
    #[error("grading violation: m0 + 2m = {lhs} is not below delta = {delta}")]
    GradingViolation { lhs: BigInt, delta: BigInt },
    /// A cofactor or multiplier degree would be negative.
    #[error("infeasible degree: {0}")]
    InfeasibleDegree(String),
    /// The power of `f_{x1}` does not clear the eliminated denominators.
    #[error("power {available} of df/dx1 is below the required {needed}")]
    InsufficientPower { needed: u32, available: u32 },
    /// The solution space is trivial.
    #[error("the assembled system has only the trivial solution")]
    NoSolution,
    /// The point is off the hypersurface or singular on it.
    #[error("singular point: {0}")]
    SingularPoint(String),
    /// A polynomial lies outside the expected alphabet.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    /// Malformed certificate text.
    #[error("certificate format: {0}")]
    Format(String),
    /// Polynomial-layer failure.
    #[error(transparent)]
    Poly(#[from] PolyError),
    /// Universal-hypersurface failure.
    #[error(transparent)]
    Jet(#[from] JetFiberError),
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, JetError>;
