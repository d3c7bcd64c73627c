use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn synram(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synram"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn records(dir: &Path) -> Vec<Value> {
    std::fs::read_to_string(dir.join("runs.jsonl"))
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn last(dir: &Path) -> Value {
    records(dir).pop().unwrap()
}

#[test]
fn help_and_usage() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(synram(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(synram(dir.path(), &["brauer", "--frobnicate"]).status.code(), Some(64));
    assert_eq!(synram(dir.path(), &["nope"]).status.code(), Some(64));
    assert!(!dir.path().join("runs.jsonl").exists());
}

#[test]
fn brauer_one_colour() {
    let dir = tempfile::tempdir().unwrap();
    let out = synram(dir.path(), &["brauer", "--r", "1", "--nmax", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = last(dir.path());
    assert_eq!(rec["command"], "brauer");
    assert_eq!(rec["outcome"]["kind"], "Found");
    assert_eq!(rec["outcome"]["n"], 3);
    assert_eq!(rec["version"], env!("CARGO_PKG_VERSION"));
    // stdout carries the same line as the ledger
    let line: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(line, rec);
}

#[test]
fn ledger_appends() {
    let dir = tempfile::tempdir().unwrap();
    synram(dir.path(), &["sak", "--a", "2", "--k", "2", "--N", "12"]);
    synram(dir.path(), &["syndetic-min", "--F", "1,2", "--N", "12"]);
    let recs = records(dir.path());
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["outcome"]["count"], recs[1]["outcome"]["min_size"]);
}

#[test]
fn custom_ledger_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = synram(dir.path(), &["--ledger", "sub.jsonl", "tower", "--tow", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("sub.jsonl")).unwrap();
    let rec: Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(rec["outcome"]["tow"], "65536");
}

#[test]
fn brauer_count_trials() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--seed", "1", "verify-lemma", "--lemma", "brauer-count", "--p", "auto", "--trials", "100"];
    let out = synram(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    let rec = last(dir.path());
    assert_eq!(rec["outcome"]["passes"], 100);
    assert_eq!(rec["seed"], 1);
    // Same seed, same outcome.
    synram(dir.path(), &args);
    let recs = records(dir.path());
    assert_eq!(recs[0]["outcome"], recs[1]["outcome"]);
}

#[test]
fn explicit_prime_must_fit_window() {
    let dir = tempfile::tempdir().unwrap();
    let out = synram(dir.path(), &["verify-lemma", "--lemma", "gvn-ap3", "--p", "101", "--N", "10", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(64));
    let out = synram(dir.path(), &["verify-lemma", "--lemma", "gvn-ap3", "--p", "31", "--N", "10", "--trials", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn emitted_trials() {
    let dir = tempfile::tempdir().unwrap();
    let out = synram(dir.path(), &["verify-lemma", "--lemma", "telescope", "--trials", "5", "--emit-trials"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 6);
}

#[test]
fn tower_cube_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = synram(dir.path(), &["tower", "--check", "cube", "--rmax", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = last(dir.path());
    assert_eq!(rec["outcome"]["all_true"], true);
    assert_eq!(rec["outcome"]["checked"], 46);
}

#[test]
fn tower_failed_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = synram(dir.path(), &["tower", "--check", "towf", "--rmax", "10", "--slack", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(last(dir.path())["outcome"]["failing"], serde_json::json!([{"r": 5}]));
}

#[test]
fn tower_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(synram(dir.path(), &["tower", "--tow", "0"]).status.code(), Some(64));
    assert_eq!(synram(dir.path(), &["tower", "--check", "cube", "--rmin", "2"]).status.code(), Some(64));
    assert_eq!(synram(dir.path(), &["tower"]).status.code(), Some(64));
}

#[test]
fn search_guard() {
    let dir = tempfile::tempdir().unwrap();
    let out = synram(dir.path(), &["rado", "schur", "--r", "3", "--nmax", "40", "--node-limit", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit of 100 nodes"));
}

#[test]
fn verify_record_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("schur.sys"), "vars: 3\n1*t1 + 1*t2 - 1*t3\n").unwrap();
    assert_eq!(synram(dir.path(), &["rado", "schur.sys", "--r", "2", "--nmax", "10"]).status.code(), Some(0));
    assert_eq!(synram(dir.path(), &["brauer", "--r", "2", "--nmax", "30"]).status.code(), Some(0));
    let out = synram(dir.path(), &["--ledger", "check.jsonl", "rado", "--verify-record", "runs.jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["outcome"]["checked"], 2);

    // Recolour one point of the Schur witness: 1 and 2 share a colour, so 1+1=2 is monochromatic.
    let text = std::fs::read_to_string(dir.path().join("runs.jsonl")).unwrap();
    let mut first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    first["outcome"]["witness"]["colours"] = serde_json::json!([1, 1, 2, 1]);
    std::fs::write(dir.path().join("bad.jsonl"), format!("{first}\n")).unwrap();
    let out = synram(dir.path(), &["--no-ledger", "rado", "--verify-record", "bad.jsonl"]);
    assert_eq!(out.status.code(), Some(2));

    // A claimed value that is too small fails the exhaustion re-check.
    let mut early: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    early["outcome"]["n"] = serde_json::json!(4);
    early["outcome"]["witness"]["colours"] = serde_json::json!([1, 2, 2]);
    std::fs::write(dir.path().join("early.jsonl"), format!("{early}\n")).unwrap();
    let out = synram(dir.path(), &["--no-ledger", "rado", "--verify-record", "early.jsonl"]);
    assert_eq!(out.status.code(), Some(2));

    // Editing the system text breaks the hash.
    let mut edited: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    edited["params"]["system"] = serde_json::json!("vars: 3\n1*t1 + 2*t2 - 1*t3\n");
    std::fs::write(dir.path().join("edited.jsonl"), format!("{edited}\n")).unwrap();
    let out = synram(dir.path(), &["--no-ledger", "rado", "--verify-record", "edited.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dimacs_to_file_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = synram(dir.path(), &["--no-ledger", "dimacs", "schur", "--N", "2", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "p cnf 2 3\n1 0\n2 0\n-1 -2 0\n");
    let out = synram(dir.path(), &["dimacs", "brauer", "--N", "16", "--r", "2", "--out", "b.cnf"]);
    assert_eq!(out.status.code(), Some(0));
    let cnf = std::fs::read_to_string(dir.path().join("b.cnf")).unwrap();
    assert!(cnf.starts_with("p cnf 32 "));
    assert_eq!(last(dir.path())["outcome"]["header"], cnf.lines().next().unwrap());
    let out = synram(dir.path(), &["dimacs", "brauer", "--N", "16", "--r", "2", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gowers_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("p: 11\n");
    for x in 0..11 {
        text.push_str(if x == 0 { "1\n" } else { "0\n" });
    }
    std::fs::write(dir.path().join("f.txt"), text).unwrap();
    let out = synram(dir.path(), &["gowers", "--fn-file", "f.txt", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let norm = last(dir.path())["outcome"]["norm"].as_f64().unwrap();
    assert!((norm - 11f64.powf(-0.75)).abs() < 1e-12);
    let out = synram(dir.path(), &["gowers", "--fn-file", "missing.txt"]);
    assert_eq!(out.status.code(), Some(74));
}

#[test]
fn syndetic_check_from_file() {
    let dir = tempfile::tempdir().unwrap();
    synram(dir.path(), &["--no-ledger", "sak", "--a", "2", "--k", "2", "--N", "20"]);
    std::fs::write(dir.path().join("w.txt"), "N:8 1*1,0*1,1*2,0*4\n").unwrap();
    let out = synram(dir.path(), &["syndetic-check", "--set", "w.txt", "--F", "1,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(last(dir.path())["outcome"]["is_window_syndetic"], true);
    synram(dir.path(), &["syndetic-check", "--set", "N:8 0*2,1*6", "--F", "1,2"]);
    let rep = last(dir.path());
    assert_eq!(rep["outcome"]["is_window_syndetic"], false);
    assert_eq!(rep["outcome"]["first_failure"], 1);
}
