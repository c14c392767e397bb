use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-dirac")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn embedding_forms_pass() {
    let o = run(&["verify", "embedding", "--weight", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("embedding/w4/form1: pass"), "{text}");
    assert!(text.contains("embedding/w4/form2: pass"), "{text}");
    assert!(text.contains("embedding/w4/negative-control: pass"), "{text}");
}

#[test]
fn table_rows_for_weight_zero() {
    let o = run(&["--format", "json", "table64", "--weight", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("json");
    assert_eq!(v["rows"], serde_json::json!([["DS+", 2, "C", -1], ["Trivial", null, "C", -1]]));
    assert_eq!(v["version"], "1");
}

#[test]
fn table_rows_for_weight_two_and_ten() {
    let o = run(&["--format", "json", "table64", "--weight", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("json");
    assert_eq!(v["rows"], serde_json::json!([["DS+", 3, "C", 0], ["LDS-", null, "C", -2]]));
    let o = run(&["--format", "json", "table64", "--weight", "10"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("json");
    assert_eq!(v["rows"], serde_json::json!([["DS+", 7, "C", 4], ["DS-", -5, "C", -6]]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "clifford", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["table64", "--weight", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "embedding", "--weight", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "spectral", "--weight", "0", "--truncation", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn odd_weight_spectral_skips_kernel_checks() {
    let o = run(&["verify", "spectral", "--weight", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("spectral/w3/ds-kernels: skipped"), "{text}");
    assert!(text.contains("spectral/w3/cancellation: pass"), "{text}");
}

#[test]
fn out_file_and_deterministic_json() {
    let dir = tempfile::tempdir().expect("tempdir");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&["--format", "json", "--out", p.to_str().unwrap(), "verify", "triple"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let (sa, sb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(sa, sb);
    let v: serde_json::Value = serde_json::from_str(&sa).expect("json");
    let checks = v["suites"][0]["checks"].as_array().expect("checks");
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    for suite in ["clifford/", "spin/", "triple/", "embedding/", "spectral/", "table/"] {
        assert!(text.contains(suite), "missing {suite}");
    }
    assert!(!text.contains(": fail"));
}
