use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn groupdet(args: &[&str]) -> Output {
    groupdet_with_stdin(args, "")
}

fn groupdet_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_groupdet"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn decide_756_golden() {
    let o = groupdet(&["decide", "--group", "z18", "756"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"in_set\":true,\"form\":\"T4-even-type1\",\"parameters\":{\"p\":\"7\",\"m\":\"1\"}}\n"
    );
}

#[test]
fn classify_31_golden() {
    let o = groupdet(&["classify-prime", "31"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"tag\":\"Type2\",\"x\":\"2\",\"y\":\"1\"}\n");
}

#[test]
fn det_identity_file_golden() {
    let path = golden("id.json");
    let o = groupdet(&["det", "--group", "z3x6", "--coeffs-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"d1\":\"1\",\"d2\":\"1\",\"d\":\"1\"}\n");
}

#[test]
fn det_bare_vector_with_oracle() {
    let o = groupdet(&["det", "--group", "z18", "--coeffs", "1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["d"], "4");
    assert_eq!(v["oracle"], "4");
    assert_eq!(v["agree"], true);
}

#[test]
fn det_group_mismatch_is_domain_error() {
    let path = golden("id.json");
    let o = groupdet(&["det", "--group", "z18", "--coeffs-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "GroupMismatch");
}

#[test]
fn decide_negative_and_batch() {
    let o = groupdet(&["decide", "--group", "z3x6", "-17"]);
    assert_eq!(json(&o)["form"], "T1-odd-coprime");
    let o = groupdet_with_stdin(&["decide", "--group", "z3x6", "--json"], "19\n5\n\n64\n");
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let flags: Vec<bool> = lines.iter().map(|v| v["in_set"].as_bool().unwrap()).collect();
    assert_eq!(flags, [true, false, true]);
}

#[test]
fn batch_with_garbage_exits_one() {
    let o = groupdet_with_stdin(&["decide", "--group", "z18"], "5\nfive\n");
    assert_eq!(o.status.code(), Some(1));
    let last: Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["error"], "PreconditionViolated");
}

#[test]
fn witness_certificate() {
    let o = groupdet(&["witness", "--group", "z3x6", "19"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["target"], "19");
    assert_eq!(v["verified"], true);
    assert_eq!(v["derivation"][0]["family"], "W1");
    assert_eq!(v["derivation"][0]["params"]["m"], "1");
    assert_eq!(v["element"]["group"], "z3x6");
}

#[test]
fn witness_for_non_member() {
    let o = groupdet(&["witness", "--group", "z3x6", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "NotAMember");
    assert!(!o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(groupdet(&[]).status.code(), Some(2));
    assert_eq!(groupdet(&["decide", "--group", "z7", "5"]).status.code(), Some(2));
    assert_eq!(groupdet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(groupdet(&["type-list", "3", "5"]).status.code(), Some(2));
}

#[test]
fn classify_composite_is_domain_error() {
    let o = groupdet(&["classify-prime", "91"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "PreconditionViolated");
}

#[test]
fn type_lists() {
    let v = json(&groupdet(&["type-list", "1", "5"]));
    assert_eq!(v["primes"], serde_json::json!(["7", "13", "19", "37", "61"]));
    let v = json(&groupdet(&["type-list", "2", "5"]));
    assert_eq!(v["primes"], serde_json::json!(["31", "43", "109", "127", "157"]));
}

#[test]
fn norm_rep() {
    let v = json(&groupdet(&["norm-rep", "7"]));
    assert_eq!((v["a"].as_str(), v["b"].as_str()), (Some("2"), Some("1")));
    assert_eq!(v["lemma6"]["A"], "0");
    let v = json(&groupdet(&["norm-rep", "31"]));
    assert!(v.get("type1").is_none());
}

#[test]
fn proofcheck_reports() {
    let o = groupdet(&["proofcheck"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
    let o = groupdet(&["proofcheck", "--identity", "F1", "--mutated"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)[0]["pass"], false);
}

#[test]
fn atlas_then_audit() {
    let dir = std::env::temp_dir().join(format!("groupdet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("a.ndjson");
    let f = file.to_str().unwrap();
    let o = groupdet(&["atlas", "--group", "z3x6", "--coeffs", "-1,0,1", "--limit", "2000", "--seed", "3", "--out", f]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["records"], 2000);
    let o = groupdet(&["audit", "--in", f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["records"], 2000);

    let bad = dir.join("bad.ndjson");
    let zero = "0,".repeat(17) + "0";
    std::fs::write(&bad, format!("{{\"group\":\"z18\",\"coeffs\":[{zero}],\"d1\":\"6\",\"d2\":\"1\",\"d\":\"6\"}}\n")).unwrap();
    let o = groupdet(&["audit", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "AuditViolation");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn version_lists_determinant_sets() {
    let o = groupdet(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("S(Z18)") && s.contains("S(Z3xZ6)"));
}
