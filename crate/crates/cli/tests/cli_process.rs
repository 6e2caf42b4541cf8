use std::process::{Command, Output};

use serde_json::Value;

fn paradoxlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paradoxlab"))
        .args(args)
        .env_remove("PARADOXLAB_SAMPLES")
        .output()
        .expect("spawn paradoxlab")
}

fn error_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {text}"))
}

#[test]
fn json_run_succeeds() {
    let out = paradoxlab(&["staircase", "--model", "bisect", "--omega-deg", "60", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], true);
    assert!((v["reports"][0]["float_value"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn table_and_svg_formats() {
    let out = paradoxlab(&["koch", "--n", "2", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("oracle: ok"), "{text}");
    let out = paradoxlab(&["wheel", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("<svg"));
}

#[test]
fn unknown_paradox_exits_10() {
    let out = paradoxlab(&["zeno"]);
    assert_eq!(out.status.code(), Some(10));
    assert_eq!(error_json(&out)["error"]["code"], "unknown_paradox");
}

#[test]
fn invalid_parameter_exits_11() {
    let out = paradoxlab(&["horn", "--upper", "lots"]);
    assert_eq!(out.status.code(), Some(11));
    let v = error_json(&out);
    assert_eq!(v["error"]["code"], "invalid_parameter");
    assert_eq!(v["error"]["parameter"], "upper");
}

#[test]
fn precondition_exits_12_and_names_it() {
    let out = paradoxlab(&["wheel", "--R", "1", "--rho", "2"]);
    assert_eq!(out.status.code(), Some(12));
    let v = error_json(&out);
    assert_eq!(v["error"]["code"], "precondition");
    assert!(v["error"]["precondition"].as_str().unwrap().contains("rho"));
    let out = paradoxlab(&["koch", "--a", "-1"]);
    assert_eq!(out.status.code(), Some(12));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("horn.json");
    let out = paradoxlab(&["horn", "--upper", "100", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["paradox"], "horn");
}

#[test]
fn unwritable_out_exits_13() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.json");
    let out = paradoxlab(&["dissection", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(13));
    assert_eq!(error_json(&out)["error"]["code"], "unwritable_path");
}

#[test]
fn samples_env_is_validated() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_paradoxlab"))
            .args(["staircase", "--n", "3"])
            .env("PARADOXLAB_SAMPLES", v)
            .output()
            .unwrap()
    };
    let ok = run("16");
    assert_eq!(ok.status.code(), Some(0));
    let bad = run("1");
    assert_ne!(bad.status.code(), Some(0));
    assert!(error_json(&bad)["error"]["message"].as_str().unwrap().contains("PARADOXLAB_SAMPLES"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(paradoxlab(&[]).status.code(), Some(2));
    assert_eq!(paradoxlab(&["koch", "--bogus", "1"]).status.code(), Some(2));
}

#[test]
fn serve_without_port_is_rejected() {
    let out = paradoxlab(&["serve"]);
    assert_eq!(out.status.code(), Some(11));
}
