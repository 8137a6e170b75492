use std::process::{Command, Output};

use mtc_core::category_data::{builtin_category, serialize_category_spec};
use serde_json::Value;

fn mtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtc")).args(args).env_remove("MTC_TOL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_shows_catalog() {
    let o = mtc(&["list"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for name in ["trivial", "semion", "fibonacci", "ising", "z_3(1)", "rep_z2_symmetric"] {
        assert!(s.contains(name));
    }
}

#[test]
fn check_exit_codes_follow_failures() {
    let o = mtc(&["check", "fibonacci", "--suite", "coherence,modular,azumaya,cft"]);
    assert_eq!(o.status.code(), Some(0));
    let o = mtc(&["check", "rep_z2_symmetric"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fails as expected (non-modular input)"));
    let o = mtc(&["check", "no_such_category"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mtc(&["check", "fibonacci", "--n-range", "2..1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_file_fails_and_names_the_check() {
    let mut doc: Value = serde_json::from_str(&serialize_category_spec(&builtin_category("fibonacci").unwrap())).unwrap();
    let r = doc["R"].as_array_mut().unwrap();
    let last = r.len() - 1;
    r[last][5] = Value::from(0.3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = mtc(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first failure: "));
    let o = mtc(&["check", path.to_str().unwrap(), "--suite", "frobenius"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_reports_are_byte_identical() {
    let args = ["check", "ising", "--json", "--seed", "5", "--suite", "module,witness,cft"];
    let a = mtc(&args);
    let b = mtc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["tool_version", "target", "options", "checks", "summary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn compute_commands() {
    let o = mtc(&["compute", "xi", "fibonacci", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["is_azumaya"], Value::Bool(true));
    assert!((v["xi"][0]["re"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!(v["xi"][1]["re"].as_f64().unwrap().abs() < 1e-9);

    let o = mtc(&["compute", "z", "fibonacci", "--perm", "(1 2)", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["triples"], serde_json::json!([[0, 0, 1], [1, 2, 1], [2, 1, 1], [3, 3, 1]]));

    let o = mtc(&["compute", "annulus", "fibonacci", "--i", "τ", "--j", "τ", "--k", "τ", "--l", "τ"]);
    assert_eq!(stdout(&o).trim(), "2");

    let o = mtc(&["compute", "multifold", "fibonacci", "--m", "3"]);
    assert!(stdout(&o).contains("(τ,τ,τ) 1"));

    let o = mtc(&["compute", "modular-data", "semion"]);
    assert!(stdout(&o).contains("modular = true"));

    let o = mtc(&["compute", "annulus", "fibonacci", "--i", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tolerance_env_var_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_mtc"))
        .args(["check", "semion", "--json", "--suite", "coherence"])
        .env("MTC_TOL", "1e-7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["options"]["tol"]["atol"], Value::from(1e-7));
    let o = Command::new(env!("CARGO_BIN_EXE_mtc"))
        .args(["check", "semion", "--suite", "coherence"])
        .env("MTC_TOL", "abc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
