//! End-to-end tests of the binary: exit-code contract, config handling,
//! and the reproducibility criterion (byte-identical suite reruns).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn chainlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

#[test]
fn bessel_trivial_value() {
    let tmp = tempfile::tempdir().unwrap();
    let out = chainlab(&["bessel", "--n", "0", "--t", "0"], tmp.path());
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["report_version"], 1);
    assert_eq!(report["metrics"]["value"], 1.0);
}

#[test]
fn usage_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    // unknown flag
    let out = chainlab(&["bessel", "--bogus"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    // out-of-domain parameter
    let out = chainlab(&["gaussian", "--delta", "0.9"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    // config file with an unknown key is rejected
    let cfg = tmp.path().join("bad.json");
    fs::write(&cfg, r#"{"n": 1, "t": 1.0, "nope": 3}"#).unwrap();
    let out = chainlab(&["bessel", "--config", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_assertion_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    // the t = 0 Rademacher control is designed to fail the KS check
    let out = chainlab(
        &["ensemble", "--mode", "normality", "--t", "0", "--n-samples", "2000"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["assertions"][0]["pass"], false);
}

#[test]
fn flags_override_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("cfg.json");
    fs::write(&cfg, r#"{"n": 2, "t": 10.0}"#).unwrap();
    let from_file = chainlab(&["bessel", "--config", cfg.to_str().unwrap()], tmp.path());
    let overridden = chainlab(
        &["bessel", "--config", cfg.to_str().unwrap(), "--n", "3"],
        tmp.path(),
    );
    let a: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&overridden.stdout).unwrap();
    assert_eq!(a["config"]["n"], 2);
    assert_eq!(b["config"]["n"], 3);
    assert_eq!(b["config"]["t"], 10.0); // file value survives for t
    assert_ne!(a["metrics"]["value"], b["metrics"]["value"]);
}

#[test]
fn propagate_writes_artifact() {
    let tmp = tempfile::tempdir().unwrap();
    let out = chainlab(
        &["propagate", "--t", "5", "--delta-site", "0", "--out-dir", "art"],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(tmp.path().join("art/propagate.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "site,q");
    assert!(!csv.contains('\r'));
    // every data row: integer site, 17-significant-digit scientific value
    for line in lines {
        let value = line.split(',').nth(1).unwrap();
        assert!(value.contains('e'), "not scientific: {value}");
    }
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().display().to_string();
                files.push((rel, fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

#[test]
fn criterion_12_suite_reruns_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let art = tmp.path().join("artifacts");
    let first = chainlab(&["suite", "--out-dir", art.to_str().unwrap()], tmp.path());
    assert!(
        first.status.success(),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    let first_files = snapshot(&art);
    assert!(!first_files.is_empty());

    let second = chainlab(&["suite", "--out-dir", art.to_str().unwrap()], tmp.path());
    assert!(second.status.success());
    let second_files = snapshot(&art);

    let pass = first.stdout == second.stdout && first_files == second_files;
    println!(
        "criterion 12 [suite reproducibility]: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion 12 [suite reproducibility] failed");
}
