use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn charkern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charkern")).args(args).output().expect("binary runs")
}

fn write_json(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, v.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn analyze_heisenberg() {
    let dir = TempDir::new().unwrap();
    let spec = write_json(dir.path(), "spec.json", &json!({"kind": "preset", "name": "heisenberg-3"}));
    let out = dir.path().join("report.json");
    let o = charkern(&["analyze", "--spec", &spec, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = read_json(&out);
    assert_eq!(r["order"], 27);
    assert_eq!(r["class"], 2);
    assert_eq!(r["degrees"], json!({"1": 9, "3": 2}));
    assert_eq!(r["kernels"]["skn"], json!([1]));
}

#[test]
fn analyze_cyclic_nine() {
    let dir = TempDir::new().unwrap();
    let spec = write_json(dir.path(), "spec.json", &json!({"kind": "cyclic", "order": 9}));
    let o = charkern(&["analyze", "--spec", &spec]);
    assert!(o.status.success());
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["kernels"]["sk"], json!([1, 3, 9]));
    assert_eq!(r["kernels"]["skn"], json!([]));
    assert_eq!(r["class"], 1);
}

#[test]
fn analyze_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = write_json(dir.path(), "spec.json", &json!({"kind": "unitriangular", "dim": 4, "p": 3}));
    let a = charkern(&["analyze", "--spec", &spec]);
    let b = charkern(&["analyze", "--spec", &spec]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_spec_exits_two_without_output() {
    let dir = TempDir::new().unwrap();
    let spec = dir.path().join("bad.json");
    fs::write(&spec, "{ not json").unwrap();
    let out = dir.path().join("out.json");
    let o = charkern(&["analyze", "--spec", spec.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn oversized_group_exits_three() {
    let dir = TempDir::new().unwrap();
    let spec = write_json(dir.path(), "spec.json", &json!({"kind": "cyclic", "order": 81}));
    let o = charkern(&["analyze", "--spec", &spec, "--cap", "27"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_claim_lists_valid_ids() {
    let o = charkern(&["verify", "--claims", "L9.9"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("T-MAIN") && err.contains("L2.2"), "{err}");
}

#[test]
fn verify_gates_abelian_claim() {
    let dir = TempDir::new().unwrap();
    let corpus = write_json(
        dir.path(),
        "corpus.json",
        &json!([
            {"name": "c9", "spec": {"kind": "cyclic", "order": 9}},
            {"name": "h3", "spec": {"kind": "preset", "name": "heisenberg-3"}},
        ]),
    );
    let out = dir.path().join("v.json");
    let o = charkern(&["verify", "--corpus", &corpus, "--claims", "L2.12", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let r = read_json(&out);
    let verdicts: Vec<&str> = r["reports"].as_array().unwrap().iter().map(|x| x["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, ["pass", "not_applicable"]);
    assert_eq!(r["summary"]["per_claim"]["L2.12"], json!({"pass": 1, "fail": 0, "not_applicable": 1, "in_scope_fail": 0}));
    let keys: Vec<&String> = r["reports"][0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["claim", "group", "scope_note", "verdict", "witness"]);
}

#[test]
fn verify_records_entry_errors() {
    let dir = TempDir::new().unwrap();
    let corpus = write_json(
        dir.path(),
        "corpus.json",
        &json!([{"name": "big", "spec": {"kind": "cyclic", "order": 81}}, {"name": "c3", "spec": {"kind": "cyclic", "order": 3}}]),
    );
    let out = dir.path().join("v.json");
    let o = charkern(&["verify", "--corpus", &corpus, "--cap", "27", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = read_json(&out);
    assert_eq!(r["summary"]["entry_errors"][0]["group"], "big");
}

#[test]
fn bad_manifest_exits_two() {
    let dir = TempDir::new().unwrap();
    let corpus = write_json(dir.path(), "corpus.json", &json!([{"name": "x", "spec": {"kind": "cyclic", "order": 3}, "extra": 1}]));
    assert_eq!(charkern(&["verify", "--corpus", &corpus]).status.code(), Some(2));
}

#[test]
fn jobs_do_not_change_output() {
    let dir = TempDir::new().unwrap();
    let one = dir.path().join("one.json");
    let many = dir.path().join("many.json");
    for (jobs, out) in [("1", &one), ("8", &many)] {
        let o = charkern(&["verify", "--claims", "L2.5,T-MAIN,T2.19", "--jobs", jobs, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(one).unwrap(), fs::read(many).unwrap());
}

#[test]
fn search_then_verify_maximal_class() {
    let dir = TempDir::new().unwrap();
    let manifest = dir.path().join("m.json");
    let o = charkern(&["search", "--ambient", "ut4-3", "--order", "81", "--class", "3", "--limit", "5", "--out", manifest.to_str().unwrap()]);
    assert!(o.status.success());
    let found = read_json(&manifest);
    let n = found.as_array().unwrap().len();
    assert!((1..=5).contains(&n));
    let out = dir.path().join("v.json");
    let o = charkern(&["verify", "--corpus", manifest.to_str().unwrap(), "--claims", "T2.16", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(read_json(&out)["summary"]["per_claim"]["T2.16"]["pass"], n);
}

#[test]
fn search_edge_cases() {
    let o = charkern(&["search", "--ambient", "heisenberg-3", "--order", "81"]);
    assert!(o.status.success());
    assert_eq!(serde_json::from_slice::<Value>(&o.stdout).unwrap(), json!([]));
    let o = charkern(&["search", "--ambient", "ut4-3", "--order", "81", "--limit", "0"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("found 0"));
    let dir = TempDir::new().unwrap();
    let big = write_json(dir.path(), "big.json", &json!({"kind": "cyclic", "order": 6561}));
    assert_eq!(charkern(&["search", "--ambient", &big, "--order", "9"]).status.code(), Some(3));
    assert_eq!(charkern(&["search", "--ambient", "no-such-group", "--order", "9"]).status.code(), Some(2));
}

#[test]
fn table_and_list() {
    let dir = TempDir::new().unwrap();
    let spec = write_json(dir.path(), "spec.json", &json!({"kind": "cyclic", "order": 3}));
    let o = charkern(&["table", "--spec", &spec]);
    assert!(o.status.success());
    let t: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(t["characters"].as_array().unwrap().len(), 3);
    let o = charkern(&["list"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("heisenberg-9") && text.contains("T2.19"));
}
