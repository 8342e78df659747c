//! Error type for the value-distribution computations.

use core_poly::PolyError;
use thiserror::Error;

/// Failures of the numeric and exact evaluations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NevanlinnaError {
    /// The unpunctured counting function requires `F(0) ≠ c`.
    #[error("base point violation: F(0) equals the target value")]
    BasePointViolation,
    /// A pole of `F` lies on the integration circle.
    #[error("pole within tolerance of the circle |ζ| = {r}")]
    PoleOnCircle { r: f64 },
    /// Radii outside `r > r1 ≥ 0`.
    #[error("invalid radius: {0}")]
    InvalidRadius(String),
    /// Curve components with a common root.
    #[error("the curve components share the factor {0}")]
    CommonRoot(String),
    /// A rational function with the zero denominator, or a curve whose
    /// components all vanish.
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Adaptive quadrature did not reach the tolerance.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    /// A log symbol whose function vanishes at the evaluation point.
    #[error("log singularity: {0}")]
    LogSingularity(String),
    /// The curve has a pole at the evaluation point.
    #[error("the curve is not analytic at the point: {0}")]
    NotAnalytic(String),
    /// A variable outside the supported alphabet.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    /// An error from the polynomial layer.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, NevanlinnaError>;
