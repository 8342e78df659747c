//! The commands: each returns its standard output together with an exit
//! code, and writes files only where the configuration asks for it.

use std::fs;
use std::path::Path;

use core_poly::scalar::parse_scalar;
use core_poly::{parse_poly, MultiIndex, UniPoly, Var};
use jet_constructor::system::{assemble_system, AssemblyOptions};
use jet_constructor::{
    affine_part, all_pass, construct_certificate, feasibility_check, fermat, search_smallest, solution_basis,
    verify_certificate, CertificateOptions, JetCertificate,
};
use jetfiber::UniversalPoly;
use nevanlinna_numeric::{
    characteristic, characteristic_map, compare_characteristics, NevanlinnaError, Normalization, RationalCurve,
};
use num::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{CliError, ExitCode, Result};
use crate::suites::{self, Fault, Grid, SuiteReport};

/// What a command prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Exit code.
    pub exit: ExitCode,
    /// Canonical JSON report.
    pub stdout: String,
    /// Warnings and notices.
    pub stderr: Vec<String>,
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    text
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn finish(report: Value, pass: bool, stderr: Vec<String>, config: &RunConfig) -> Result<Outcome> {
    let stdout = canonical(&report);
    if let Some(path) = &config.out {
        write_file(path, &stdout)?;
    }
    let exit = if pass { ExitCode::Success } else { ExitCode::VerificationFailure };
    Ok(Outcome { exit, stdout, stderr })
}

fn suites_json(reports: &[SuiteReport]) -> (Value, bool) {
    let pass = reports.iter().all(SuiteReport::pass);
    (Value::Array(reports.iter().map(SuiteReport::to_json).collect()), pass)
}

/// The identity suites on the grid `n ≤ config.n`, `δ ≤ config.delta`,
/// `k ≤ config.max_k`.
pub fn cmd_verify_identities(config: &RunConfig) -> Result<Outcome> {
    verify_identities_with(config, None)
}

/// [`cmd_verify_identities`] with an optional injected fault.
pub fn verify_identities_with(config: &RunConfig, fault: Option<Fault>) -> Result<Outcome> {
    let grid = Grid {
        max_n: config.n,
        max_delta: config.delta,
        max_k: config.max_k,
        samples: config.samples,
        seed: config.seed,
    };
    let mut warnings = Vec::new();
    if grid.is_empty() {
        warnings.push("warning: the grid is empty; nothing was checked".to_string());
    }
    let lift_cases: Vec<(u32, u32)> =
        (1..=grid.max_n).flat_map(|n| (2..=grid.max_delta).map(move |d| (n, d))).collect();
    let vertical_cases: Vec<(u32, u32)> =
        (1..=grid.max_n).flat_map(|n| (n + 1..=grid.max_delta).map(move |d| (n, d))).collect();
    let reports = vec![
        suites::phi_recursion(&grid, fault),
        suites::delta_closed_form(&Grid { max_k: grid.max_k.min(4), ..grid }),
        suites::slanted_identities(&grid),
        suites::lifted_tangency(&lift_cases, grid.samples, grid.seed),
        suites::vertical_bookkeeping(&vertical_cases),
    ];
    let (suites, pass) = suites_json(&reports);
    let report = json!({ "command": "verify-identities", "config": config, "pass": pass, "suites": suites, "warnings": warnings });
    finish(report, pass, warnings, config)
}

/// Reads a homogeneous polynomial in `z_0, …, z_n`.
pub fn universal_from_text(text: &str, n: u32) -> Result<UniversalPoly> {
    let p = parse_poly(text)?;
    let mut coeffs = Vec::new();
    for (m, c) in p.terms() {
        let mut exps = vec![0u32; n as usize + 1];
        for (v, e) in m.factors() {
            match v {
                Var::Z { order: 0, index } if *index <= n => exps[*index as usize] += *e,
                other => return Err(CliError::Usage(format!("`{other}` is not one of z0..z{n}"))),
            }
        }
        coeffs.push((MultiIndex::new(exps), c.clone()));
    }
    let delta = p.total_degree();
    UniversalPoly::concrete(n, delta, coeffs).map_err(|e| CliError::Usage(e.to_string()))
}

/// How `cmd_construct` chooses its instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConstructMode {
    /// Search the smallest Fermat instance with a nonzero solution.
    pub search: bool,
    /// Use the smallest power of `f_{x1}` clearing the denominators.
    pub minimal_power: bool,
}

fn certificate_options(config: &RunConfig, minimal_power: bool) -> CertificateOptions {
    CertificateOptions { minimal_power, seed: config.seed, retry_cap: config.retry_cap as usize }
}

/// Builds a certificate for the configured or searched instance, writes it
/// to `config.out` and reports feasibility, system size and nullity.
pub fn cmd_construct(config: &RunConfig, mode: ConstructMode) -> Result<Outcome> {
    let opts = certificate_options(config, mode.minimal_power);
    let n = config.n;
    let (f, m0, m, search) = if mode.search {
        match search_smallest(n, config.max_delta, config.max_m, config.max_m0, &opts)? {
            Some(hit) => (fermat(n, hit.delta), hit.m0, hit.m, json!({ "delta": hit.delta, "m0": hit.m0, "m": hit.m })),
            None => {
                return Err(CliError::NoSolution(format!(
                    "no Fermat instance with delta <= {}, m <= {}, m0 <= {} has a nonzero solution",
                    config.max_delta, config.max_m, config.max_m0
                )))
            }
        }
    } else {
        let f = match &config.input {
            Some(path) => universal_from_text(&read_file(path)?, n)?,
            None => fermat(n, config.delta),
        };
        (f, config.m0, config.m, Value::Null)
    };
    let delta = f.delta;
    if m0 + 2 * m >= delta {
        return Err(CliError::InfeasibleParameters(format!("m0 + 2m = {} is not below delta = {delta}", m0 + 2 * m)));
    }
    let feasibility = feasibility_check(n, &BigInt::from(delta), &BigInt::from(m0), &BigInt::from(m))?;
    let system = assemble_system(&affine_part(&f), n, m0, m, AssemblyOptions { minimal_power: mode.minimal_power })?;
    let nullity = solution_basis(&f, m0, m, &opts)?.len();
    let mut summary = json!({
        "command": "construct",
        "n": n,
        "delta": delta,
        "m0": m0,
        "m": m,
        "search": search,
        "feasibility": {
            "lhs": feasibility.lhs.to_string(),
            "rhs": feasibility.rhs.to_string(),
            "feasible": feasibility.feasible,
        },
        "system": {
            "rows": system.rows.len(),
            "columns": system.columns.len(),
            "q_columns": system.num_q_columns,
            "power": system.power,
            "degree_bound": system.degree_bound,
        },
        "nullity": nullity,
    });
    if nullity == 0 {
        summary["certificate"] = Value::Null;
        return Ok(Outcome { exit: ExitCode::NoSolution, stdout: canonical(&summary), stderr: Vec::new() });
    }
    let cert = construct_certificate(&f, m0, m, &opts)?;
    let text = cert.to_json()?;
    let pass = all_pass(&cert.report);
    summary["pass"] = json!(pass);
    match &config.out {
        Some(path) => {
            write_file(path, &text)?;
            summary["certificate"] = json!(path.display().to_string());
        }
        None => summary["certificate"] = serde_json::from_str(&text).expect("certificate JSON"),
    }
    let exit = if pass { ExitCode::Success } else { ExitCode::VerificationFailure };
    Ok(Outcome { exit, stdout: canonical(&summary), stderr: Vec::new() })
}

/// Re-verifies the certificate at `config.input`.
pub fn cmd_check(config: &RunConfig) -> Result<Outcome> {
    let path = config.input.as_ref().ok_or_else(|| CliError::Usage("check needs --input PATH".into()))?;
    let cert = JetCertificate::from_json(&read_file(path)?)?;
    let report = verify_certificate(&cert, &certificate_options(config, false));
    let pass = all_pass(&report);
    let checks: Vec<Value> =
        report.iter().map(|e| json!({ "check": e.check, "pass": e.pass, "detail": e.detail })).collect();
    let value = json!({ "command": "check", "certificate": path.display().to_string(), "checks": checks, "pass": pass });
    let exit = if pass { ExitCode::Success } else { ExitCode::VerificationFailure };
    Ok(Outcome { exit, stdout: canonical(&value), stderr: Vec::new() })
}

/// The `d log` rewrites up to `config.max_k`, the Cartan rewrite on
/// `config.samples` random configurations of `config.q` hyperplanes in
/// dimension `config.n`, and the direct image of the fixture.
pub fn cmd_logpole(config: &RunConfig) -> Result<Outcome> {
    if config.n == 0 || (config.q as u64) < config.n as u64 {
        return Err(CliError::Usage(format!("need 1 <= n <= q, got n = {}, q = {}", config.n, config.q)));
    }
    let mut report = SuiteReport::new("logpole");
    for j in 1..=config.max_k {
        report.check(logpole_smt::verify_dlog_rewrite(j), || format!("d^{j}x to dlog rewrite fails"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.samples {
        suites::cartan_case(&mut report, config.n, config.q as usize, &mut rng);
    }
    suites::direct_image_case(&mut report, config.n);
    let pass = report.pass();
    let value = json!({ "command": "logpole", "config": config, "pass": pass, "suites": [report.to_json()] });
    finish(value, pass, Vec::new(), config)
}

/// Parses `c0 c1 …; c0 c1 …` into curve components.
pub fn parse_curve(text: &str) -> Result<RationalCurve> {
    let mut components = Vec::new();
    for part in text.split(';') {
        let coeffs =
            part.split_whitespace().map(parse_scalar).collect::<std::result::Result<Vec<_>, _>>()?;
        components.push(UniPoly::new(coeffs));
    }
    Ok(RationalCurve::new(components)?)
}

/// Evaluates `eval` at `r`, moving `r` outward by a relative `1e−6` while a
/// pole sits on the circle, at most `cap` times.
fn with_retry<T>(
    r: f64,
    cap: u32,
    notices: &mut Vec<String>,
    eval: impl Fn(f64) -> nevanlinna_numeric::Result<T>,
) -> Result<(f64, T)> {
    let mut radius = r;
    for _ in 0..=cap {
        match eval(radius) {
            Err(NevanlinnaError::PoleOnCircle { r: bad }) => {
                radius = bad * (1.0 + 1e-6);
                notices.push(format!("notice: pole on |z| = {bad}; retrying at r = {radius}"));
            }
            other => return Ok((radius, other?)),
        }
    }
    Err(NevanlinnaError::PoleOnCircle { r: radius }.into())
}

/// For a given curve: `T(r, φ)`, `T(r, F_j/F_0)` and the comparison report
/// at the configured radii. Without a curve: the numerical suite.
pub fn cmd_nevanlinna(config: &RunConfig) -> Result<Outcome> {
    let Some(text) = &config.curve else {
        let report = suites::nevanlinna_numerics(config.samples, config.seed, config.tolerance);
        let pass = report.pass();
        let value = json!({ "command": "nevanlinna", "config": config, "pass": pass, "suites": [report.to_json()] });
        return finish(value, pass, Vec::new(), config);
    };
    let phi = parse_curve(text)?;
    let norm = Normalization::from(config.norm);
    let affine = phi.affine_functions()?;
    let mut notices = Vec::new();
    let mut radii = Vec::new();
    let mut rows = Vec::new();
    for &r in &config.radii {
        let (radius, values) = with_retry(r, config.retry_cap, &mut notices, |rho| {
            let mut row = vec![characteristic_map(&phi, rho, config.base_radius)?.value];
            for f in &affine {
                row.push(characteristic(f, rho, Some(config.base_radius), norm)?.value);
            }
            Ok(row)
        })?;
        radii.push(radius);
        rows.push(values);
    }
    let comparison = compare_characteristics(&phi, &radii, config.base_radius, norm)?;
    let value = json!({
        "command": "nevanlinna",
        "config": config,
        "radii": radii,
        "characteristics": rows,
        "comparison": comparison.to_json(),
        "comparison_holds": comparison.holds(config.tolerance),
        "notices": notices,
    });
    finish(value, true, notices, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Overrides;

    fn config(flags: Overrides) -> RunConfig {
        RunConfig::resolve(flags, None, Overrides::default()).unwrap()
    }

    #[test]
    fn universal_text() {
        let f = universal_from_text("z1^3 + z2^3 - z0^3", 2).unwrap();
        assert_eq!((f.n, f.delta, f.support().len()), (2, 3, 3));
        assert!(matches!(universal_from_text("x1 + z0", 2), Err(CliError::Usage(_))));
        let err = universal_from_text("z0 + * z1", 2).unwrap_err();
        assert!(err.to_string().contains("byte"), "{err}");
    }

    #[test]
    fn curve_text() {
        let phi = parse_curve("1; 0 1; 0 0 1/2").unwrap();
        assert_eq!(phi.n(), 2);
        assert!(matches!(parse_curve("0 1; 0 2"), Err(CliError::Nevanlinna(_))));
    }

    #[test]
    fn constant_curve_reports_zero() {
        let out = cmd_nevanlinna(&config(Overrides { curve: Some("2; 3".into()), ..Overrides::default() })).unwrap();
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(v["characteristics"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|x| x.as_f64().unwrap().abs() < 1e-12));
    }

    #[test]
    fn pole_on_circle_retries() {
        let flags = Overrides { curve: Some("-10 1; 1".into()), radii: Some(vec![5.0, 10.0]), ..Overrides::default() };
        let out = cmd_nevanlinna(&config(flags)).unwrap();
        assert_eq!(out.stderr.len(), 1);
        assert!(out.stderr[0].starts_with("notice: pole on |z| = 10"));
    }

    #[test]
    fn cartan_in_the_plane_passes() {
        let out = cmd_logpole(&config(Overrides { n: Some(2), q: Some(4), ..Overrides::default() })).unwrap();
        assert_eq!(out.exit, ExitCode::Success);
    }

    #[test]
    fn infeasible_parameters_and_missing_files() {
        let flags = Overrides { delta: Some(4), m0: Some(2), m: Some(1), ..Overrides::default() };
        let err = cmd_construct(&config(flags), ConstructMode::default()).unwrap_err();
        assert_eq!(err.exit_code(), ExitCode::Usage);
        let flags = Overrides { input: Some("/nonexistent/cert.json".into()), ..Overrides::default() };
        assert_eq!(cmd_check(&config(flags)).unwrap_err().exit_code(), ExitCode::Usage);
    }
}
