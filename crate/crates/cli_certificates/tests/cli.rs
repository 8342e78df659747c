//! The `jetcert` binary: exit codes, canonical output and negative
//! controls.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn jetcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetcert")).args(args).output().expect("the binary runs")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn construct_then_check() {
    let path = tmp("cli-fermat-4.json");
    let p = path.to_str().unwrap();
    let args = ["construct", "--n", "2", "--delta", "4", "--m0", "1", "--m", "1", "--out", p];
    let first = jetcert(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    let bytes = std::fs::read(&path).unwrap();
    let second = jetcert(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(bytes, std::fs::read(&path).unwrap());
    let summary = stdout_json(&first);
    assert_eq!(summary["nullity"], Value::from(1));
    assert_eq!(summary["feasibility"]["feasible"], Value::Bool(false));

    let checked = jetcert(&["check", "--input", p]);
    assert_eq!(checked.status.code(), Some(0));
    assert_eq!(stdout_json(&checked)["pass"], Value::Bool(true));

    let text = String::from_utf8(bytes).unwrap();
    let tampered_path = tmp("cli-fermat-4-tampered.json");
    let mut cert: Value = serde_json::from_str(&text).unwrap();
    let terms = cert["Q"].as_array_mut().unwrap();
    let last = terms.len() - 1;
    terms[last][1] = Value::String("5/1".into());
    std::fs::write(&tampered_path, serde_json::to_string_pretty(&cert).unwrap()).unwrap();
    let tampered = jetcert(&["check", "--input", tampered_path.to_str().unwrap()]);
    assert_eq!(tampered.status.code(), Some(1));
}

#[test]
fn search_finds_the_smallest_instance() {
    let out = jetcert(&["construct", "--search", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!((v["delta"].as_u64(), v["m0"].as_u64(), v["m"].as_u64()), (Some(4), Some(1), Some(1)));
}

#[test]
fn no_solution_and_usage_exit_codes() {
    let none = jetcert(&["construct", "--n", "2", "--delta", "3", "--m0", "0", "--m", "1"]);
    assert_eq!(none.status.code(), Some(3), "{}", String::from_utf8_lossy(&none.stdout));
    assert_eq!(stdout_json(&none)["nullity"], Value::from(0));
    let infeasible = jetcert(&["construct", "--n", "2", "--delta", "4", "--m0", "2", "--m", "1"]);
    assert_eq!(infeasible.status.code(), Some(2));
    let missing = jetcert(&["check", "--input", "/nonexistent/certificate.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_flag = jetcert(&["construct", "--delta", "four"]);
    assert_eq!(bad_flag.status.code(), Some(2));
}

#[test]
fn malformed_polynomial_reports_its_position() {
    let input = tmp("cli-malformed.txt");
    std::fs::write(&input, "z0^4 + z1^4 - * z2^4").unwrap();
    let out = jetcert(&["construct", "--n", "2", "--m0", "1", "--m", "1", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error at byte"), "{err}");
}

#[test]
fn polynomial_from_a_file() {
    let input = tmp("cli-fermat-text.txt");
    std::fs::write(&input, "z1^4 + z2^4 - z0^4").unwrap();
    let out = jetcert(&["construct", "--n", "2", "--m0", "1", "--m", "1", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn default_identity_grid_passes_quickly() {
    let start = std::time::Instant::now();
    let out = jetcert(&["verify-identities"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(start.elapsed().as_secs() < 60);
    let v = stdout_json(&out);
    assert_eq!(v["config"]["n"], Value::from(3));
    assert_eq!(v["config"]["delta"], Value::from(5));
}

#[test]
fn empty_grid_passes_with_a_warning() {
    let out = jetcert(&["verify-identities", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: the grid is empty"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let config = tmp("cli-config.json");
    std::fs::write(&config, r#"{"n": 1, "delta": 2, "samples": 1}"#).unwrap();
    let out = jetcert(&["verify-identities", "--config", config.to_str().unwrap(), "--delta", "3"]);
    let v = stdout_json(&out);
    assert_eq!((v["config"]["n"].as_u64(), v["config"]["delta"].as_u64()), (Some(1), Some(3)));
    std::fs::write(&config, r#"{"unknown": 1}"#).unwrap();
    assert_eq!(jetcert(&["verify-identities", "--config", config.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn logpole_and_nevanlinna_reports() {
    let cartan = jetcert(&["logpole", "--n", "2", "--q", "4"]);
    assert_eq!(cartan.status.code(), Some(0));
    let constant = jetcert(&["nevanlinna", "--curve", "2; 3"]);
    assert_eq!(constant.status.code(), Some(0));
    let v = stdout_json(&constant);
    assert!(v["characteristics"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|x| x.as_f64().unwrap().abs() < 1e-12));
    let pole = jetcert(&["nevanlinna", "--curve=-10 1; 1", "--radii", "5,10"]);
    assert_eq!(pole.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&pole.stderr).contains("retrying at r ="));
    let suite = jetcert(&["nevanlinna"]);
    assert_eq!(suite.status.code(), Some(0));
}
