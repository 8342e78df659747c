//! Run configuration: command-line flags over a JSON file over the
//! defaults of each command.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use nevanlinna_numeric::Normalization;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// The constant in front of the circle average of `log⁺|F|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormChoice {
    /// `1/(4π)`.
    FourPi,
    /// `1/(2π)`.
    Standard,
}

impl From<NormChoice> for Normalization {
    fn from(n: NormChoice) -> Normalization {
        match n {
            NormChoice::FourPi => Normalization::FourPi,
            NormChoice::Standard => Normalization::Standard,
        }
    }
}

/// Optional settings, read from flags or from a configuration file.
#[derive(Clone, Debug, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Overrides {
    /// Dimension `n` (the largest one for grids).
    #[arg(long)]
    pub n: Option<u32>,
    /// Degree `δ` (the largest one for grids).
    #[arg(long)]
    pub delta: Option<u32>,
    /// Degree bound of the jet differential in the base coordinates.
    #[arg(long)]
    pub m0: Option<u32>,
    /// Weight of the jet differential.
    #[arg(long)]
    pub m: Option<u32>,
    /// Number of hyperplanes for the Cartan construction.
    #[arg(long)]
    pub q: Option<u32>,
    /// Random seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest jet order in the identity suites.
    #[arg(long)]
    pub max_k: Option<u32>,
    /// Random samples per grid cell.
    #[arg(long)]
    pub samples: Option<u32>,
    /// Tolerance of the numerical verdicts.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Normalization of the characteristic function.
    #[arg(long, value_enum)]
    pub norm: Option<NormChoice>,
    /// Largest degree of the certificate search.
    #[arg(long)]
    pub max_delta: Option<u32>,
    /// Largest weight of the certificate search.
    #[arg(long)]
    pub max_m: Option<u32>,
    /// Largest base degree of the certificate search.
    #[arg(long)]
    pub max_m0: Option<u32>,
    /// Random jets tried by the nonvanishing check.
    #[arg(long)]
    pub retry_cap: Option<u32>,
    /// Radii of the numerical reports.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// Base radius of the numerical reports.
    #[arg(long)]
    pub base_radius: Option<f64>,
    /// Curve components as coefficient lists, constant term first,
    /// separated by `;`.
    #[arg(long)]
    pub curve: Option<String>,
    /// Output file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Input file.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

impl Overrides {
    /// Reads a JSON configuration file.
    pub fn from_file(path: &Path) -> Result<Overrides> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Fills every unset field from `other`.
    pub fn or(self, other: Overrides) -> Overrides {
        Overrides {
            n: self.n.or(other.n),
            delta: self.delta.or(other.delta),
            m0: self.m0.or(other.m0),
            m: self.m.or(other.m),
            q: self.q.or(other.q),
            seed: self.seed.or(other.seed),
            max_k: self.max_k.or(other.max_k),
            samples: self.samples.or(other.samples),
            tolerance: self.tolerance.or(other.tolerance),
            norm: self.norm.or(other.norm),
            max_delta: self.max_delta.or(other.max_delta),
            max_m: self.max_m.or(other.max_m),
            max_m0: self.max_m0.or(other.max_m0),
            retry_cap: self.retry_cap.or(other.retry_cap),
            radii: self.radii.or(other.radii),
            base_radius: self.base_radius.or(other.base_radius),
            curve: self.curve.or(other.curve),
            out: self.out.or(other.out),
            input: self.input.or(other.input),
        }
    }
}

/// The seed used when none is configured.
pub const DEFAULT_SEED: u64 = 20240607;

/// A fully resolved configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RunConfig {
    /// Dimension `n`.
    pub n: u32,
    /// Degree `δ`.
    pub delta: u32,
    /// Base degree bound `m0`.
    pub m0: u32,
    /// Weight `m`.
    pub m: u32,
    /// Number of hyperplanes.
    pub q: u32,
    /// Random seed.
    pub seed: u64,
    /// Largest jet order.
    pub max_k: u32,
    /// Samples per grid cell.
    pub samples: u32,
    /// Numerical tolerance.
    pub tolerance: f64,
    /// Normalization.
    pub norm: NormChoice,
    /// Search cap on `δ`.
    pub max_delta: u32,
    /// Search cap on `m`.
    pub max_m: u32,
    /// Search cap on `m0`.
    pub max_m0: u32,
    /// Cap on random jets.
    pub retry_cap: u32,
    /// Radii.
    pub radii: Vec<f64>,
    /// Base radius.
    pub base_radius: f64,
    /// Curve text.
    pub curve: Option<String>,
    /// Output file.
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Input file.
    #[serde(skip)]
    pub input: Option<PathBuf>,
}

impl RunConfig {
    /// Resolves `flags`, then the file, then `defaults`, and validates the
    /// result.
    pub fn resolve(flags: Overrides, file: Option<Overrides>, defaults: Overrides) -> Result<RunConfig> {
        let o = flags.or(file.unwrap_or_default()).or(defaults);
        let config = RunConfig {
            n: o.n.unwrap_or(2),
            delta: o.delta.unwrap_or(4),
            m0: o.m0.unwrap_or(1),
            m: o.m.unwrap_or(1),
            q: o.q.unwrap_or(o.n.unwrap_or(2) + 2),
            seed: o.seed.unwrap_or(DEFAULT_SEED),
            max_k: o.max_k.unwrap_or(4),
            samples: o.samples.unwrap_or(5),
            tolerance: o.tolerance.unwrap_or(0.1),
            norm: o.norm.unwrap_or(NormChoice::FourPi),
            max_delta: o.max_delta.unwrap_or(30),
            max_m: o.max_m.unwrap_or(6),
            max_m0: o.max_m0.unwrap_or(6),
            retry_cap: o.retry_cap.unwrap_or(16),
            radii: o.radii.unwrap_or_else(|| vec![5.0, 10.0, 50.0, 100.0]),
            base_radius: o.base_radius.unwrap_or(0.9),
            curve: o.curve,
            out: o.out,
            input: o.input,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        if self.retry_cap == 0 || self.max_m == 0 || self.max_delta == 0 {
            return usage("retry-cap, max-m and max-delta must be positive".into());
        }
        if self.max_k > jetfiber::DEFAULT_ORDER_CAP {
            return usage(format!("max-k = {} exceeds the order cap {}", self.max_k, jetfiber::DEFAULT_ORDER_CAP));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return usage(format!("tolerance {} must be positive", self.tolerance));
        }
        if !(self.base_radius.is_finite() && self.base_radius >= 0.0) {
            return usage(format!("base radius {} must be nonnegative", self.base_radius));
        }
        if self.radii.iter().any(|r| !(r.is_finite() && *r > self.base_radius)) {
            return usage(format!("every radius must exceed the base radius {}", self.base_radius));
        }
        Ok(())
    }
}
