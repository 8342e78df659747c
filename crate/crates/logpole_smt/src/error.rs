//! Error type for the log-pole constructions.

use core_poly::PolyError;
use thiserror::Error;

/// Failures of the log-pole constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogPoleError {
    /// A Wronskian or form list without entries.
    #[error("empty input")]
    EmptyInput,
    /// A form that is constant or not of degree one.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// Fewer forms than the dimension.
    #[error("{q} forms are fewer than the dimension {n}")]
    TooFewForms { q: usize, n: u32 },
    /// Two proportional forms.
    #[error("forms {0} and {1} are proportional")]
    Proportional(usize, usize),
    /// A chosen subset whose linear parts are dependent.
    #[error("dependent subset: {0}")]
    DependentSubset(String),
    /// A direct image that vanishes identically.
    #[error("the direct image vanishes identically")]
    VanishingImage,
    /// A term with fewer powers of the cover coordinate than the
    /// normalization removes.
    #[error("a term carries x^{exponent} of the cover coordinate, fewer than the normalization power {ell}")]
    PoleAlongDivisor { ell: u32, exponent: u32 },
    /// A log symbol without a registered function.
    #[error("log symbol with index {0} has no registered function")]
    UnregisteredSymbol(u32),
    /// A variable outside the supported alphabet.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    /// Malformed serialized input.
    #[error("format error: {0}")]
    Format(String),
    /// An error from the polynomial layer.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, LogPoleError>;
