use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqg")).args(args).output().expect("run fqg")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn emit_universal(group: &str) -> PathBuf {
    let file = scratch(&format!("universal-{group}.json"));
    let out = fqg(&["aut", "--group", group, "--emit-family", path(&file)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    file
}

#[test]
fn build_verify_and_dual() {
    let file = scratch("c-s3.json");
    let out = fqg(&["build", "--group", "S3", "--kind", "grp", "-o", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let out = fqg(&["verify", path(&file), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let out = fqg(&["dual", path(&file), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v.to_string().contains("fourier"));
}

#[test]
fn aut_counts() {
    let out = fqg(&["aut", "--group", "Q8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 24);
}

#[test]
fn universal_family_passes_every_check() {
    let file = emit_universal("D4");
    assert_eq!(fqg(&["check-family", path(&file), "--all"]).status.code(), Some(0));
    for scheme in ["auto", "order", "dual"] {
        let out = fqg(&["relations", path(&file), "--scheme", scheme, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{scheme}");
        let v = json(&out);
        assert_eq!(v["scheme"], scheme);
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn cyclic_scheme() {
    let file = emit_universal("Z6");
    let out = fqg(&["relations", path(&file), "--scheme", "cyclic", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let file = emit_universal("S3");
    let out = fqg(&["relations", path(&file), "--scheme", "cyclic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn composition_round_trip() {
    let file = emit_universal("Z5");
    let composed = scratch("composed-z5.json");
    let out = fqg(&["compose", path(&file), path(&file), "-o", path(&composed)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fqg(&["check-family", path(&composed), "--all"]).status.code(), Some(0));
}

#[test]
fn broken_family_exits_one_with_witness() {
    let file = emit_universal("Z3");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    v["alpha"]["entries"][0][2] = serde_json::json!(["2", "0"]);
    let broken = scratch("broken-z3.json");
    std::fs::write(&broken, v.to_string()).unwrap();

    assert_eq!(fqg(&["check-family", path(&broken)]).status.code(), Some(1));
    let out = fqg(&["relations", path(&broken), "--scheme", "auto", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    let witnesses = v["witnesses"].as_array().unwrap();
    assert!(!witnesses.is_empty());
}

#[test]
fn malformed_input_exits_two() {
    let bad = scratch("malformed.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = fqg(&["verify", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(fqg(&["verify", path(&scratch("missing.json"))]).status.code(), Some(2));
    assert_eq!(fqg(&["aut", "--group", "nonsense"]).status.code(), Some(2));
}

#[test]
fn single_criterion_selftest() {
    let out = fqg(&["selftest", "--criterion", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
    let out = fqg(&["--backend", "float", "selftest", "--criterion", "1"]);
    assert_eq!(out.status.code(), Some(0));
}
