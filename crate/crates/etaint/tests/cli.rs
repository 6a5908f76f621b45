use std::collections::BTreeSet;
use std::process::{Command, Output};

use etaint::report::Report;
use etaint::verify::Status;

fn etaint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etaint"))
        .args(args)
        .env_remove("ETAINT_TOL")
        .output()
        .expect("binary runs")
}

fn json_report(args: &[&str]) -> (i32, Report) {
    let out = etaint(args);
    let text = String::from_utf8(out.stdout).unwrap();
    (
        out.status.code().unwrap(),
        Report::from_json(&text).unwrap(),
    )
}

fn passing(report: &Report) -> BTreeSet<(String, String)> {
    report
        .records
        .iter()
        .filter(|r| r.status == Status::Pass)
        .map(|r| (r.id.clone(), r.params_string()))
        .collect()
}

#[test]
fn full_run_exits_zero_with_a10_flagged() {
    let (code, report) = json_report(&["run", "--all", "--tol", "1e-10", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(report.suite.totals.fail, 0);
    let a10: Vec<_> = report.records.iter().filter(|r| r.id == "A10").collect();
    assert!(!a10.is_empty());
    for r in a10 {
        assert_eq!(r.status, Status::Flagged);
        assert!(r.abs_residual > 0.0);
    }
}

#[test]
fn looser_tolerance_never_loses_a_pass() {
    let (_, tight) = json_report(&["run", "--all", "--tol", "1e-10", "--format", "json"]);
    let (_, loose) = json_report(&["run", "--all", "--tol", "1e-6", "--format", "json"]);
    assert!(passing(&tight).is_subset(&passing(&loose)));
}

#[test]
fn eval_constant_identities() {
    for id in ["A13", "EQ11", "eq17", "A14"] {
        let (code, report) = json_report(&["eval", "--identity", id, "--format", "json"]);
        assert_eq!(code, 0, "{id}");
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.records[0].status, Status::Pass);
    }
}

#[test]
fn eval_at_given_parameter() {
    let (code, report) = json_report(&[
        "eval",
        "--identity",
        "EQ5",
        "--param",
        "t=2.5",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report.records[0].params["t"], 2.5);
}

#[test]
fn unreachable_tolerance_is_a_failure() {
    let out = etaint(&[
        "eval",
        "--identity",
        "EQ7",
        "--param",
        "s=10",
        "--tol",
        "1e-12",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rounding floor"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["run"],
        &["run", "--all", "--tol", "1"],
        &["run", "--all", "--tol", "abc"],
        &["eval", "--identity", "EQ99"],
        &["eval", "--identity", "EQ5", "--param", "s=1"],
        &["eval", "--identity", "EQ5", "--param", "t=-1"],
        &["eval", "--identity", "EQ5", "--param", "t=nan"],
        &["eval", "--identity", "A13", "--param", "t=1"],
        &["table", "--identity", "EQ5", "--param", "t=1:0:0.1"],
        &["table", "--identity", "EQ5", "--param", "t=1:2"],
        &["list", "--jobs", "0"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = etaint(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(etaint(&["--help"]).status.code(), Some(0));
    assert_eq!(etaint(&["--version"]).status.code(), Some(0));
}

#[test]
fn list_names_every_identity() {
    let out = etaint(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for id in etaint_core::ClosedFormId::ALL {
        assert!(text.contains(id.label()), "{id}");
    }
    let json = etaint(&["list", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(
        v.as_array().unwrap().len(),
        etaint_core::ClosedFormId::ALL.len()
    );
}

#[test]
fn table_sweeps_the_range() {
    let (code, report) = json_report(&[
        "table",
        "--identity",
        "EQ5",
        "--param",
        "t=0.5:2:0.5",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let ts: Vec<f64> = report.records.iter().map(|r| r.params["t"]).collect();
    assert_eq!(ts, [0.5, 1.0, 1.5, 2.0]);
}

#[test]
fn output_file_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = etaint(&[
        "run",
        "--identity",
        "EQ9",
        "--identity",
        "A8",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.to_json().unwrap(), text);
    assert!(report.records.iter().any(|r| r.id == "A8"));
}

#[test]
fn csv_has_one_row_per_record() {
    let out = etaint(&["run", "--identity", "A3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap().len(), 12);
    let (_, report) = json_report(&["run", "--identity", "A3", "--format", "json"]);
    assert_eq!(reader.records().count(), report.records.len());
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_etaint"))
        .args(["eval", "--identity", "EQ9", "--format", "json"])
        .env("ETAINT_TOL", "1e-7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(report.suite.tol, Some(1e-7));

    let bad = Command::new(env!("CARGO_BIN_EXE_etaint"))
        .args(["list"])
        .env("ETAINT_TOL", "5")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let strip = |args: &[&str]| {
        let (_, mut r) = json_report(args);
        r.suite.started_at.clear();
        r.suite.totals.total_ms = 0.0;
        r.records.iter_mut().for_each(|x| x.ms = 0.0);
        r.to_json().unwrap()
    };
    let one = strip(&["run", "--all", "--format", "json", "-j", "1"]);
    let four = strip(&["run", "--all", "--format", "json", "-j", "4"]);
    assert_eq!(one, four);
}
