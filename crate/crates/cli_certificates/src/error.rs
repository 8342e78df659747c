//! Errors of the command layer and their exit codes.

use core_poly::PolyError;
use jet_constructor::JetError;
use logpole_smt::LogPoleError;
use nevanlinna_numeric::NevanlinnaError;
use thiserror::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    /// Every check passed.
    Success = 0,
    /// A verification failed.
    VerificationFailure = 1,
    /// Bad arguments, unreadable input or malformed text.
    Usage = 2,
    /// The parameters admit no solution.
    NoSolution = 3,
}

impl ExitCode {
    /// The numeric status.
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Failures of a command.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flags or configuration.
    #[error("usage: {0}")]
    Usage(String),
    /// A file could not be read or written.
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    /// Parameters outside the domain of the construction.
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    /// The construction has no nonzero solution.
    #[error("no solution: {0}")]
    NoSolution(String),
    /// Failure of the polynomial layer, including parse errors.
    #[error(transparent)]
    Poly(#[from] PolyError),
    /// Failure of the jet-differential constructor.
    #[error(transparent)]
    Jet(#[from] JetError),
    /// Failure of the log-pole constructions.
    #[error(transparent)]
    LogPole(#[from] LogPoleError),
    /// Failure of the numerical layer.
    #[error(transparent)]
    Nevanlinna(#[from] NevanlinnaError),
}

impl CliError {
    /// The exit code reported for this failure.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::InfeasibleParameters(_) | CliError::Poly(_) => {
                ExitCode::Usage
            }
            CliError::NoSolution(_) | CliError::Jet(JetError::NoSolution) => ExitCode::NoSolution,
            CliError::Jet(
                JetError::GradingViolation { .. }
                | JetError::InsufficientPower { .. }
                | JetError::InfeasibleDegree(_)
                | JetError::RangeViolation(_)
                | JetError::Format(_)
                | JetError::Poly(PolyError::Parse { .. }),
            ) => ExitCode::Usage,
            _ => ExitCode::VerificationFailure,
        }
    }
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, CliError>;
