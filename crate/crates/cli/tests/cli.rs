use std::process::{Command, Output};

use serde_json::Value;

fn affrt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affrt")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("affrt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn ybe_family_filter() {
    let out = affrt(&["ybe", "check", "--family", "free-fermion"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let ids: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["ybe.free_fermion.random_pairs"]);
    assert_eq!(r["summary"]["pass"], 1);
}

#[test]
fn unknown_config_key_is_a_usage_error() {
    let p = tmp("bad.toml");
    std::fs::write(&p, "seed = 3\nsuites = [\"ybe\"]\nnot_a_key = true\n").unwrap();
    let out = affrt(&["--config", p.to_str().unwrap(), "all"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not_a_key") && err.contains("line 3"), "{err}");
}

#[test]
fn bad_points_are_a_usage_error() {
    let out = affrt(&["aff", "classify", "--points", r#"[{"a1":"1","a2":"1","b1":"1","b2":"1","c1":"1","c2":"1"}]"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = affrt(&["slqhat", "build-w", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_w_and_scan_pass() {
    let out = affrt(&["slqhat", "build-w", "--q", "2", "--a", "3/5", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"][0]["verdict"], "PASS");
    let out = affrt(&["slqhat", "reduce-scan", "--q", "2", "--m", "1", "--n", "1", "--ratios", "5/7,11"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn written_braiding_fails_with_witness() {
    let out = affrt(&["--seed", "4", "aff", "braiding"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let written = r["checks"].as_array().unwrap().iter().find(|c| c["id"] == "aff.braiding.as_written").unwrap();
    assert_eq!(written["verdict"], "FAIL");
    assert!(written["witness"]["restricted"].is_array());
}

#[test]
fn classify_accepts_explicit_points() {
    // z = x⁻¹∘y has a1 = a2 = 0 here: x is the identity
    let pts = r#"[{"a1":"1","a2":"1","b1":"0","b2":"0","c1":"1","c2":"1"},
                  {"a1":"0","a2":"0","b1":"2","b2":"3","c1":"3","c2":"2"}]"#;
    let out = affrt(&["aff", "classify", "--points", pts]);
    let r = json(&out);
    assert_eq!(r["checks"][0]["id"], "aff.classify.both_zero");
    assert_eq!(r["checks"][0]["witness"]["lattice_dims"], serde_json::json!([0, 1, 3, 4]));
}

#[test]
fn out_file_is_reproducible_and_diffs_clean() {
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    for p in [&a, &b] {
        let out = affrt(&["--seed", "9", "--out", p.to_str().unwrap(), "slqhat", "dual-comodule", "--q", "3", "--r", "1"]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let out = affrt(&["diff", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["changed"], serde_json::json!([]));
}

#[test]
fn markdown_rendering() {
    let out = affrt(&["--format", "markdown", "frt", "component", "--q", "3", "--x", "2", "--y", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# Report: frt.component"));
    assert!(text.contains("| `frt.component` | PASS |"));
}
