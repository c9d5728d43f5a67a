use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn laumon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laumon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn pattern_counts() {
    let finite = json(&laumon(&["patterns", "--finite", "-n", "3", "-d", "1,1"]));
    assert_eq!(finite["count"], 2);
    let affine = json(&laumon(&["patterns", "--affine", "-n", "2", "--total", "1"]));
    assert_eq!(affine["count"], 2);
    assert_eq!(affine["blocks"].as_array().unwrap().len(), 2);
    let vacuum = json(&laumon(&["patterns", "--finite", "-n", "2", "-d", "0"]));
    assert_eq!(vacuum["count"], 1);
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.json");
    let out = laumon(&[
        "verify",
        "--suite",
        "loop",
        "-n",
        "2",
        "-D",
        "2",
        "-R",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let reports = reports.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn controls_fail_as_expected() {
    let out = laumon(&["verify", "--suite", "controls"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().filter(|l| l.starts_with("FAIL")).count() >= 5);
    assert!(text.contains("failed as expected"));
}

#[test]
fn same_seed_same_file() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let args = [
            "verify",
            "--suite",
            "loop",
            "-n",
            "2",
            "-D",
            "2",
            "-R",
            "1",
            "--strategy",
            "random",
            "--seed",
            "7",
        ];
        let out = laumon(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
        assert!(out.status.success());
        fs::read(path).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn specialize_exit_codes() {
    let ok = json(&laumon(&["specialize", "-n", "3", "-K", "1", "--mu", "0,0,0"]));
    assert_eq!(ok["closure"]["holds"], true);
    let wrong = laumon(&[
        "specialize",
        "-n",
        "3",
        "-K",
        "2",
        "--mu",
        "2,1,0",
        "--u-exponent",
        "-4",
    ]);
    assert_eq!(wrong.status.code(), Some(1));
    assert_eq!(laumon(&["specialize", "-K", "0"]).status.code(), Some(2));
    assert_eq!(laumon(&["specialize", "--mu", "0,1,0"]).status.code(), Some(2));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"n": 4, "level": 1}"#).unwrap();
    let out = json(&laumon(&[
        "--config",
        cfg.to_str().unwrap(),
        "specialize",
        "-n",
        "3",
        "--max-degree",
        "1",
    ]));
    assert_eq!(out["n"], 3);
    assert_eq!(out["level"], 1);
    fs::write(&cfg, r#"{"depth": 2}"#).unwrap();
    assert_eq!(
        laumon(&["--config", cfg.to_str().unwrap(), "patterns", "-n", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn operator_matrix() {
    let m = json(&laumon(&[
        "op", "matrix", "-n", "2", "--kind", "f", "--node", "1", "--from", "0",
    ]));
    let entries = m["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["value"], "(t1)/(v^2 - 1)");
    let hat = laumon(&[
        "op", "matrix", "--affine", "-n", "3", "--kind", "e-hat0", "--node", "3", "--from", "1,0,0",
    ]);
    assert!(!json(&hat)["entries"].as_array().unwrap().is_empty());
    let t_affine = laumon(&[
        "op", "matrix", "--affine", "-n", "3", "--kind", "t", "--node", "1", "--from", "0,0,0",
    ]);
    assert_eq!(t_affine.status.code(), Some(2));
}
