use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use primfree::format::to_json;
use primfree::models::{nsym_model, square_zero_model};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primfree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["axioms", "--model", "nsym", "-N", "5"]), 0);
    assert_eq!(code(&["axioms", "--model", "fqsym", "-N", "3"]), 0);
    assert_eq!(code(&["certify", "--model", "fqsym", "-N", "6"]), 3);
    assert_eq!(code(&["certify", "--model", "fqsym", "-N", "6", "--fqsym-cap", "4"]), 3);
    assert_eq!(code(&["certify", "--model", "square-zero", "-N", "3"]), 1);
    assert_eq!(code(&["certify"]), 2);
    assert_eq!(code(&["certify", "--model", "nsym", "-N", "0"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn file_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let corrupt = dir.path().join("corrupt.json");
    fs::write(&corrupt, r#"{"name":"x","N":2,"basis":[["1"],["a"]]}"#).unwrap();
    assert_eq!(code(&["axioms", "--file", path(&corrupt)]), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&["axioms", "--file", path(&missing)]), 2);

    let good = dir.path().join("nsym.json");
    fs::write(&good, to_json(&nsym_model(3).unwrap()).unwrap()).unwrap();
    assert_eq!(code(&["axioms", "--file", path(&good)]), 0);
    assert_eq!(code(&["axioms", "--file", path(&good), "-N", "2"]), 0);
    assert_eq!(code(&["axioms", "--file", path(&good), "-N", "4"]), 2);
    assert_eq!(code(&["axioms", "--file", path(&good), "--model", "nsym"]), 2);
}

#[test]
fn square_zero_file_fails_axioms() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("sz.json");
    fs::write(&f, to_json(&square_zero_model(3).unwrap()).unwrap()).unwrap();
    assert_eq!(code(&["axioms", "--file", path(&f)]), 1);
    assert_eq!(code(&["tables", "--file", path(&f)]), 1);
    let out = run(&["certify", "--file", path(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["axioms_ok"], false);
}

#[test]
fn export_and_reload_give_identical_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let exported = dir.path().join("fqsym.json");
    assert_eq!(code(&["export", "--model", "fqsym", "-N", "4", "--out", path(&exported)]), 0);
    let a = run(&["certify", "--model", "fqsym", "-N", "4"]);
    let b = run(&["certify", "--file", path(&exported)]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["input_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = |extra: &[&'static str]| {
        let mut v = vec!["certify", "--model", "nsym", "-N", "5"];
        v.extend_from_slice(extra);
        v
    };
    let plain = run(&args(&[]));
    let c = path(&cache).to_string();
    let cold = run(&[args(&[]), vec!["--cache-dir", &c]].concat());
    let files = fs::read_dir(&cache).unwrap().count();
    assert_eq!(files, 6);
    let warm = run(&[args(&[]), vec!["--cache-dir", &c]].concat());
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);

    // a corrupted entry is a miss and gets rewritten
    let entry = fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    fs::write(&entry, "not json").unwrap();
    let repaired = run(&[args(&[]), vec!["--cache-dir", &c]].concat());
    assert_eq!(repaired.stdout, plain.stdout);
    assert_ne!(fs::read_to_string(&entry).unwrap(), "not json");

    let other = dir.path().join("unused");
    let o = path(&other).to_string();
    let skipped = run(&[args(&["--no-cache"]), vec!["--cache-dir", &o]].concat());
    assert_eq!(skipped.stdout, plain.stdout);
    assert!(!other.exists());
}

#[test]
fn text_tables() {
    let out = run(&["tables", "--model", "nsym", "-N", "4", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!out.stdout.is_empty());
    let json = run(&["tables", "--model", "nsym", "-N", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["N"], 4);
    assert_eq!(v["model"], "nsym");
}
