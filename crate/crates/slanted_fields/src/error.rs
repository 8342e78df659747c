//! Error type for the slanted-field constructions.

use jetfiber::JetFiberError;
use thiserror::Error;

/// Failures of the vector-field constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlantedError {
    /// A tangent pair whose multi-indices do not satisfy `ν + e_q = μ + e_p`.
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    /// A tree level or Δ pair with `r = s`.
    #[error("degenerate tree: level {level} uses the index {index} twice")]
    DegenerateTree { level: usize, index: u32 },
    /// An index outside `0..=n`.
    #[error("index {index} out of range 0..={n}")]
    IndexOutOfRange { index: u32, n: u32 },
    /// An order outside the range supported by the construction.
    #[error("order {k} is not supported for n = {n}")]
    OrderOutOfRange { k: u32, n: u32 },
    /// A tree whose order differs from the requested one.
    #[error("tree of order {got} where order {expected} is required")]
    TreeOrder { expected: usize, got: usize },
    /// A multi-index with the wrong length or degree.
    #[error("multi-index {0} has the wrong shape")]
    BadMultiIndex(String),
    /// An expansion index left the nonnegative range.
    #[error("negative component in {0}")]
    NegativeComponent(String),
    /// A `Ψ^(k)` denominator vanishes identically.
    #[error("Ψ^({0}) vanishes identically for the chosen tree")]
    SingularLocus(u32),
    /// A field or differential outside the supported coordinate alphabet.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    /// Lie differentiation of a differential that does not vanish to order
    /// at least `q + k`.
    #[error("order underflow: vanishing order {p} < pole order {q} + jet order {k}")]
    OrderUnderflow { p: i64, q: i64, k: i64 },
    /// Division by the zero function.
    #[error("division by zero")]
    DivisionByZero,
    /// An error from the jet-fiber layer.
    #[error(transparent)]
    Jet(#[from] JetFiberError),
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, SlantedError>;
