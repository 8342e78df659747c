//! End-to-end acceptance: one PASS/FAIL line per criterion, each with its
//! tolerance and time budget. A criterion that is known to fail is printed
//! as FAIL and checked to still fail, so that a change in its status does
//! not go unnoticed.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use cli_certificates::suites::{self, Grid, SuiteReport};
use cli_certificates::{cmd_check, cmd_construct, ConstructMode, ExitCode, Overrides, RunConfig, DEFAULT_SEED};
use serde_json::Value;

/// Criteria expected to fail, with the reason printed next to them.
const KNOWN_RED: &[(u32, &str)] = &[(6, "the smallest admissible power at order 2 is 3 > 2!")];

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    summary: String,
    report: String,
    elapsed: Duration,
    budget: Duration,
}

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn suite_outcome(id: u32, title: &'static str, budget: Duration, run: impl FnOnce() -> SuiteReport) -> Outcome {
    let start = Instant::now();
    let report = run();
    let elapsed = start.elapsed();
    let first_failure = report.failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default();
    Outcome {
        id,
        title,
        pass: report.pass(),
        summary: format!("{} cases, {} failed{first_failure}", report.cases, report.failure_count),
        report: serde_json::to_string(&report.to_json()).unwrap(),
        elapsed,
        budget,
    }
}

fn certificate_outcome(seed: u64) -> Outcome {
    let start = Instant::now();
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("acceptance-certificate-{seed}.json"));
    let flags = Overrides { n: Some(2), seed: Some(seed), out: Some(path.clone()), ..Overrides::default() };
    let config = RunConfig::resolve(flags, None, Overrides::default()).unwrap();
    let built = cmd_construct(&config, ConstructMode { search: true, minimal_power: false }).unwrap();
    let certificate = std::fs::read_to_string(&path).unwrap();
    let check_config = RunConfig { input: Some(path), ..config };
    let checked = cmd_check(&check_config).unwrap();
    let summary: Value = serde_json::from_str(&built.stdout).unwrap();
    let verdicts: Value = serde_json::from_str(&checked.stdout).unwrap();
    let failing: Vec<String> = verdicts["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] != Value::Bool(true))
        .map(|c| c["check"].as_str().unwrap().to_string())
        .collect();
    Outcome {
        id: 9,
        title: "end-to-end certificate on the smallest Fermat instance",
        pass: built.exit == ExitCode::Success && checked.exit == ExitCode::Success && failing.is_empty(),
        summary: format!(
            "delta={} m0={} m={} nullity={} N={}; failing checks {failing:?}",
            summary["delta"], summary["m0"], summary["m"], summary["nullity"], summary["system"]["power"]
        ),
        report: format!("{}{certificate}{}", built.stdout, checked.stdout),
        elapsed: start.elapsed(),
        budget: minutes(30),
    }
}

fn run_criteria(seed: u64) -> Vec<Outcome> {
    let grid = |max_n, max_delta, max_k, samples| Grid { max_n, max_delta, max_k, samples, seed };
    vec![
        suite_outcome(1, "Phi recursion, n <= 3, delta <= 6, k <= min(4, n+1), 20 samples", minutes(2), || {
            suites::phi_recursion(&grid(3, 6, 4, 20), None)
        }),
        suite_outcome(2, "Delta closed form and annihilation, k <= 4", minutes(1), || {
            suites::delta_closed_form(&grid(3, 6, 4, 10))
        }),
        suite_outcome(3, "slanted-field identities, k <= n-1, n <= 3, delta <= 6, 10 samples", minutes(5), || {
            suites::slanted_identities(&grid(3, 6, 2, 10))
        }),
        suite_outcome(4, "lifted-field tangency, 10 random fields", minutes(1), || {
            suites::lifted_tangency(&[(2, 3), (2, 4), (3, 4)], 10, seed)
        }),
        suite_outcome(5, "vertical generators: annihilation and bookkeeping bounds", minutes(10), || {
            suites::vertical_bookkeeping(&[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5)])
        }),
        suite_outcome(6, "elimination: kappa_1, P_1, cofactors, kappa_l <= l!", minutes(2), || {
            suites::elimination_bounds(&[(2, 4), (3, 4)], 3)
        }),
        suite_outcome(7, "dimension formula against rank, n = 3, delta, s <= 3", minutes(2), || {
            suites::dimension_formula(3, 3, 3, 3, seed)
        }),
        suite_outcome(8, "monomial count bounds, r <= 4, m <= 20", Duration::from_secs(30), || {
            suites::counting_bounds(4, 4, 20)
        }),
        certificate_outcome(seed),
        suite_outcome(10, "log-pole rewrites, Cartan, direct image", minutes(2), || {
            suites::logpole_constructions(4, 3, seed)
        }),
        suite_outcome(11, "Nevanlinna additivity, asymptotics, comparison", minutes(2), || {
            suites::nevanlinna_numerics(5, seed, 0.1)
        }),
    ]
}

fn print_line(id: u32, pass: bool, title: &str, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id:>2}: {verdict}  {title}: {detail}");
}

#[test]
fn acceptance_criteria() {
    let first = run_criteria(DEFAULT_SEED);
    let mut unexpected = Vec::new();
    for o in &first {
        let within = o.elapsed < o.budget;
        let pass = o.pass && within;
        let known = KNOWN_RED.iter().find(|(id, _)| *id == o.id).map(|(_, why)| format!(" (known red: {why})"));
        let detail = format!(
            "{}; {:.1} s of {} s{}",
            o.summary,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs(),
            known.clone().unwrap_or_default()
        );
        print_line(o.id, pass, o.title, &detail);
        if pass == known.is_some() {
            unexpected.push(o.id);
        }
    }
    let start = Instant::now();
    let second = run_criteria(DEFAULT_SEED);
    let differing: Vec<u32> =
        first.iter().zip(&second).filter(|(a, b)| a.report != b.report).map(|(a, _)| a.id).collect();
    let deterministic = differing.is_empty();
    print_line(
        12,
        deterministic,
        "rerun of criteria 1-11 with the same seed is byte-identical",
        &format!("differing criteria {differing:?}; {:.1} s", start.elapsed().as_secs_f64()),
    );
    if !deterministic {
        unexpected.push(12);
    }
    assert!(unexpected.is_empty(), "criteria with an unexpected verdict: {unexpected:?}");
}
