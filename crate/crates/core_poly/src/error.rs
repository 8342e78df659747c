//! Error type shared by the polynomial substrate.

use thiserror::Error;

/// Failures raised by operations on differential polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// The operation needs a nonzero polynomial.
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    /// Terms of the polynomial carry different weights.
    #[error("polynomial is not weight-homogeneous (weights {first} and {second} both occur)")]
    NotWeightHomogeneous { first: u32, second: u32 },
    /// A grading precondition (degree or weight) does not hold.
    #[error("grading violation: {0}")]
    GradingViolation(String),
    /// A jet germ does not carry enough derivatives.
    #[error("insufficient truncation: order {needed} needed, germ known to order {available}")]
    InsufficientTruncation { needed: u32, available: u32 },
    /// A variable is outside the alphabet an operation supports.
    #[error("unsupported variable `{0}` for this operation")]
    UnsupportedVariable(String),
    /// A germ does not provide a coordinate that occurs in the polynomial.
    #[error("missing coordinate `{0}` in jet germ")]
    MissingCoordinate(String),
    /// Division by the zero polynomial or the zero scalar.
    #[error("division by zero")]
    DivisionByZero,
    /// Malformed text input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, PolyError>;
