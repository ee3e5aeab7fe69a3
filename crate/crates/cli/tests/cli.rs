use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn racahkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_racahkit")).args(args).env_remove("RACAHKIT_MAX_N").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).expect("report written")
}

#[test]
fn racah_suite_passes_with_schema() {
    let out = racahkit(&["racah", "verify", "--n", "3", "--model", "bargmann"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["command"], "racah verify");
    assert!(v["total_elapsed_ms"].is_u64());
    let reports = v["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_eq!(r["model"], "bargmann");
        assert_eq!(r["pass"], true);
        assert_eq!(r["residual_terms"], Value::Array(vec![]));
        assert!(r["elapsed_ms"].is_u64());
        assert!(r["identity"].is_string());
        assert!(r["subsets"].is_array());
    }
}

#[test]
fn basis_lists_labels_polynomials_and_eigenvalues() {
    let out = racahkit(&["basis", "--n", "3", "--k", "2", "--model", "bg", "--explicit", "jacobi"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let labels: Vec<&str> = v["basis"].as_array().unwrap().iter().map(|b| b["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["(2,0)", "(1,1)", "(0,2)"]);
    let first = &v["basis"][0];
    assert!(first["polynomial"].as_str().unwrap().starts_with("x1^2"));
    // (j1 + nu1 + nu2)(j1 + nu1 + nu2 - 1) with j1 = 2
    assert_eq!(first["eigenvalues"]["C[2]"], "nu1^2 + 2 nu1 nu2 + nu2^2 + 3 nu1 + 3 nu2 + 2");
    let identities: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["identity"].as_str().unwrap()).collect();
    assert!(identities.contains(&"explicit Jacobi basis, k=2"));
}

#[test]
fn specialization_is_echoed_and_applied() {
    let out = racahkit(&["su11", "--n", "2", "--subset", "1,2", "--model", "bargmann", "--emit-op", "--nu", "1=3/4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["config"]["nu"]["nu1"], "3/4");
    let records = v["reports"][0]["records"].as_array().unwrap();
    assert_eq!(records[0][0], "plus");
    assert_eq!(records[0][1], "x1^2 d1 + x2^2 d2 + 3/2 * x1 + 2 * nu2 * x2");
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["su11", "--n", "0"][..],
        &["su11"],
        &["su11", "--n", "2", "--nu", "1=oops"],
        &["su11", "--n", "2", "--nu", "3=1"],
        &["su11", "--n", "2", "--subset", "1,3"],
        &["basis", "--n", "3"],
        &["reduced", "verify", "--n", "3", "--k", "1", "--nu", "1=1"],
        &["all", "--n", "5"],
        &["racah", "verify", "--n", "2", "--model", "other"],
    ] {
        let out = racahkit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let out = racahkit(&["su11", "--n", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n must be at least 1"));
}

#[test]
fn deterministic_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = racahkit(&["all", "--n", "3", "--k", "2", "--deterministic", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(read(&a), read(&b));
    let v: Value = serde_json::from_slice(&read(&a)).unwrap();
    assert!(v.get("total_elapsed_ms").is_none());
}

#[test]
fn compare_ignores_timings_and_reports_differences() {
    let dir = TempDir::new().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    for name in ["a.json", "b.json"] {
        assert_eq!(racahkit(&["racah", "verify", "--n", "3", "--out", &p(name)]).status.code(), Some(0));
    }
    let same = racahkit(&["compare", &p("a.json"), &p("b.json")]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&same.stdout), "identical\n");

    assert_eq!(racahkit(&["racah", "verify", "--n", "2", "--out", &p("c.json")]).status.code(), Some(0));
    let differ = racahkit(&["compare", &p("a.json"), &p("c.json")]);
    assert_eq!(differ.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&differ.stdout).starts_with("reports differ at /"));

    let missing = racahkit(&["compare", &p("a.json"), &p("none.json")]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn text_output_ends_with_summary() {
    let out = racahkit(&["miller", "reduce", "--n", "2", "--emit", "text", "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS Miller identification"));
    assert!(text.ends_with("PASS 5/5 reports\n"), "{text}");
}

#[test]
fn cap_override_degrades_to_monomial_checks() {
    let out = Command::new(env!("CARGO_BIN_EXE_racahkit"))
        .args(["racah", "verify", "--n", "3", "--suite", "commute", "--degree", "2"])
        .env("RACAHKIT_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["config"]["options"]["check_level"], "monomials of degree 2 (n above cap 2)");
    assert_eq!(v["reports"][0]["records"][0][0], "checked on monomials of degree");

    let bad =
        Command::new(env!("CARGO_BIN_EXE_racahkit")).args(["racah", "verify", "--n", "3"]).env("RACAHKIT_MAX_N", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn reduced_and_laplace_suites_pass() {
    let out = racahkit(&["reduced", "verify", "--n", "4", "--k", "2", "--all-pairs"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reports"].as_array().unwrap().len(), 6);
    let out = racahkit(&["laplace", "verify", "--n", "2", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let constants = &v["reports"][3]["records"];
    assert_eq!(constants[1], Value::from(vec!["c(1)", "2 nu1"]));
}
