use std::process::{Command, Output};

use hyperconv::harness::{replay, run_laws, Instance, Report, ScopeConfig, Status};
use hyperconv::space::FiniteSpace;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperconv")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn enumerate_counts() {
    let all = cli(&["enumerate", "--points", "4"]);
    let t0 = cli(&["enumerate", "--points", "4", "--t0"]);
    assert!(all.status.success() && t0.status.success());
    assert_eq!(String::from_utf8_lossy(&all.stdout).lines().count(), 355);
    assert_eq!(String::from_utf8_lossy(&t0.stdout).lines().count(), 219);
}

#[test]
fn json_report_round_trips() {
    let out = cli(&["laws", "--only", "mesh,prop-refine", "--max-points", "2", "--report", "json"]);
    assert!(out.status.success());
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.schema, 1);
    assert_eq!(report.laws.len(), 2);
    assert!(report.laws.iter().all(|l| l.status == Status::Pass && l.instances > 0));
}

#[test]
fn unknown_law_is_an_error() {
    assert_eq!(cli(&["laws", "--only", "no-such-law"]).status.code(), Some(2));
    assert_eq!(cli(&["replay", "no-such-law", &data("sierpinski_instance.json")]).status.code(), Some(2));
}

#[test]
fn replay_reproduces_a_failure() {
    let instance: Instance =
        serde_json::from_str(&std::fs::read_to_string(data("sierpinski_instance.json")).unwrap()).unwrap();
    let violation = replay("example-discrete", &instance).unwrap().unwrap_err();
    assert!(!violation.message.is_empty());
    let out = cli(&["replay", "example-discrete", &data("sierpinski_instance.json")]);
    assert_eq!(out.status.code(), Some(1));
    let printed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(printed["message"], violation.message.as_str());
    assert_eq!(cli(&["replay", "mesh", &data("sierpinski_instance.json")]).status.code(), Some(0));
}

#[test]
fn invariants_of_sierpinski() {
    let out = cli(&["invariants", &data("sierpinski.json"), "--alpha", "kappa"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["points"], 2);
    assert_eq!(v["opens"].as_array().unwrap().len(), 3);
    assert_eq!(v["components"].as_array().unwrap().len(), 1);
    assert_eq!(v["separation"]["t0"], true);
    assert_eq!(v["separation"]["t1"], false);
    assert_eq!(v["scott_solidity"]["solid"], true);
    assert_eq!(cli(&["invariants", &data("sierpinski.json"), "--alpha", "zz"]).status.code(), Some(2));
}

#[test]
fn skipped_laws_fail_the_report() {
    let cfg = ScopeConfig { max_points: Some(1), ..ScopeConfig::default() };
    let only = vec!["example-discrete".to_string()];
    let report = run_laws(&only, &[], &cfg).unwrap();
    assert_eq!(report.laws[0].status, Status::Skipped);
    assert!(!report.ok());
    let report = run_laws(&only, &only, &cfg).unwrap();
    assert_eq!(report.laws[0].status, Status::Excluded);
    assert!(report.ok());
}

#[test]
fn sierpinski_file_matches_builder() {
    let spec = serde_json::from_str(&std::fs::read_to_string(data("sierpinski.json")).unwrap()).unwrap();
    assert_eq!(FiniteSpace::build(&spec).unwrap().opens(), FiniteSpace::sierpinski().opens());
}
