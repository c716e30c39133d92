use std::process::{Command, Output};

use serde_json::Value;
use shirshov::formats::{from_csv, BoundsRow, SearchGridRow, SearchReportJson, WitnessJson};
use shirshov_core::search::{extremal_length, AvoiderQuery};
use shirshov_core::{Alphabet, Word};

fn shirshov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shirshov")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn ndiv_witness() {
    let out = shirshov(&["check-ndiv", "--word", "cba", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["divisible"], true);
    let wit: WitnessJson = serde_json::from_value(v["witness"].clone()).unwrap();
    let word = Word::parse("cba", Alphabet::new(3).unwrap()).unwrap();
    assert!(wit.into_witness(3).validate(&word));

    let out = shirshov(&["check-ndiv", "--word", "abc", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["divisible"], false);
    assert!(v["witness"].is_null());
}

#[test]
fn usage_errors_exit_two() {
    let out = shirshov(&["check-ndiv", "--word", "cba", "--n", "3", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    let out = shirshov(&["check-ndiv", "--word", "cbz", "--n", "3", "--alphabet", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = shirshov(&["bounds", "--n", "3", "--d", "2", "--l", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_csv_rows() {
    let out = shirshov(&["bounds", "--n", "2..5", "--l", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,d,l,psi_exact,psi_display,phi_display,upsilon,lopatin,kuzmin_lower,gk_lower\n"));
    let rows: Vec<BoundsRow> = from_csv(&text).unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1].upsilon, "8748");
    assert_eq!(rows[1].kuzmin_lower, "5");
}

#[test]
fn search_report_matches_library() {
    let out = shirshov(&["search", "--n", "2", "--d", "2", "--l", "2", "--max-len", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let report: SearchReportJson = serde_json::from_str(&stdout(&out)).unwrap();
    let q = AvoiderQuery::new(2, 2, 2, 10).unwrap();
    let direct = extremal_length(&q).unwrap();
    assert_eq!(report, SearchReportJson::new(&q, &direct, None).unwrap());
    assert_eq!(report.extremal_length, 2);
    // Schema round trip.
    let again = serde_json::to_string(&report).unwrap();
    assert_eq!(again.trim(), stdout(&out).trim());
}

#[test]
fn search_grid_csv() {
    let out = shirshov(&["search", "--n", "2..3", "--d", "3", "--l", "2", "--max-len", "40", "--format", "csv"]);
    let rows: Vec<SearchGridRow> = from_csv(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0].n, rows[0].extremal_length), (2, 4));
    assert_eq!((rows[1].n, rows[1].extremal_length), (3, 13));
}

#[test]
fn search_is_deterministic_across_workers() {
    let args = |w: &'static str| ["search", "--n", "3", "--d", "3", "--l", "3", "--max-len", "40", "--workers", w];
    let one = shirshov(&args("1"));
    let many = shirshov(&args("6"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn timing_is_opt_in() {
    let out = shirshov(&["search", "--n", "2", "--d", "2", "--l", "3", "--max-len", "8", "--timing"]);
    let report: SearchReportJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.seconds.is_some());
}

#[test]
fn counting() {
    let out = shirshov(&["count", "perms", "--n", "3", "--k", "10"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], "16796");
    let out = shirshov(&["count", "avoiders", "--n", "2", "--d", "2", "--l", "1", "--max-len", "3"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counts"], serde_json::json!([1, 0, 0]));
}

#[test]
fn word_commands() {
    let out = shirshov(&["check-power", "--word", "abcbc", "--d", "2"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["power"], serde_json::json!({ "start": 1, "root": "bc", "exponent": 2 }));
    let out = shirshov(&["reduce", "--word", "abc", "--n", "2", "--d", "2"]);
    assert!(stdout(&out).contains("irreducible"));
    let out = shirshov(&["height", "--word", "aaabbb", "--n", "2"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["height"], 2);
    let out = shirshov(&["chains", "--word", "aaaa", "--d", "2"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["power"]["root"], "a");
    let out = shirshov(&["chains", "--word", "abab", "--d", "2"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["chain_count"], 1);
    let out = shirshov(&["excise", "--word", "aaaaaaaabaaaaaaaa", "--n", "2", "--stats"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["steps"], 2);
    assert_eq!(v["n_i"], serde_json::json!([1, 1]));
}

#[test]
fn audit_reports_and_persists_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let persist = dir.path().to_str().unwrap();
    let ok = shirshov(&["audit", "--instances", "50", "--only", "selector-runs", "--skip-exhaustive"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = shirshov(&[
        "audit", "--instances", "200", "--only", "division-oracle", "--mutate", "faulty-comparator", "--persist", persist,
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let saved = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(saved, 1);
}

#[test]
fn golden_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["excise", "--word", "aaaaaaaabaaaaaaaa", "--n", "2", "--golden", d];
    assert_eq!(shirshov(&args).status.code(), Some(0));
    assert_eq!(shirshov(&args).status.code(), Some(0));
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&file, "{}\n").unwrap();
    assert_eq!(shirshov(&args).status.code(), Some(1));
}
