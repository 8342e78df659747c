//! Command-line surface over the jet-differential crates: run
//! configuration, certificate construction and checking, the identity
//! suites, and the log-pole and value-distribution reports. Every command
//! is deterministic for a fixed configuration and writes canonical JSON.

pub mod commands;
pub mod config;
pub mod error;
pub mod suites;

pub use commands::{
    canonical, cmd_check, cmd_construct, cmd_logpole, cmd_nevanlinna, cmd_verify_identities, parse_curve,
    universal_from_text, verify_identities_with, ConstructMode, Outcome,
};
pub use config::{NormChoice, Overrides, RunConfig, DEFAULT_SEED};
pub use error::{CliError, ExitCode, Result};
pub use suites::{Fault, Grid, SuiteReport};
