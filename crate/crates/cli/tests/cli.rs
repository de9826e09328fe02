use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const EX0: &str = "u00 + u01*y1^2 ; u10*y1@1 + u11*y1\n";
const EX0_SR: &str = "u00*u01@1*u11^2 - u00@1*u01*u10^2";
const EX2: &str = "u00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2\n";
/// `y2` never occurs, so the rank is 1 of 2.
const DEFICIENT: &str = "main y1 y2\nu00 + u01*y1 ; u10 + u11*y1@1 ; u20 + u21*y1@2\n";

fn sdres(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sdres"))
        .args(args)
        .env_remove("SDRES_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = sdres(args, stdin);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str], stdin: &str) -> serde_json::Value {
    serde_json::from_str(&ok(args, stdin)).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn essential_and_super_essential() {
    assert_eq!(ok(&["--exact", "essential"], EX0), "essential\nrank 1 of 1\n");
    assert_eq!(ok(&["--exact", "essential"], DEFICIENT), "not essential\nrank 1 of 2\n");
    assert_eq!(ok(&["--exact", "super-essential"], EX2), "T = {0,1}\n");
}

#[test]
fn jacobi_numbers() {
    assert_eq!(ok(&["--exact", "jacobi"], EX0), "order matrix:\n  (0)\n  (1)\nJ = (1, 0)\n");
}

#[test]
fn bounds_report() {
    let text = ok(&["--exact", "bounds"], EX0);
    assert!(text.lines().any(|l| l == "final = (1, 0)"), "{text}");
    let v = json(&["--exact", "--json", "bounds"], EX2);
    assert_eq!(v["super_essential"], serde_json::json!([0, 1]));
    assert_eq!(v["jacobi"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["final_bound"], serde_json::json!([1, 0, null]));
}

#[test]
fn resultant_text_from_both_engines() {
    let ansatz = ok(&["--exact", "resultant", "--engine", "ansatz"], EX0);
    let reduction = ok(&["--exact", "resultant", "--engine", "reduction"], EX0);
    assert_eq!(ansatz, reduction);
    assert_eq!(ansatz.lines().next(), Some(EX0_SR));
    assert!(ansatz.contains("# orders 1 0\n# degree 4\n"), "{ansatz}");
    assert!(ansatz.contains("# verification passed"), "{ansatz}");
}

#[test]
fn resultant_json_from_both_engines() {
    let a = json(&["--exact", "--json", "resultant", "--engine", "ansatz"], EX0);
    let r = json(&["--exact", "--json", "resultant", "--engine", "reduction"], EX0);
    assert_eq!(a, r);
    assert_eq!(a["resultant"].as_array().unwrap().len(), 2);
}

#[test]
fn certificates_verify_and_tampering_is_caught() {
    let cert = ok(&["--exact", "--json", "resultant"], EX0);
    let system = scratch("ex0.sys", EX0);
    let system = system.to_str().unwrap();
    let good = scratch("ex0.json", &cert);
    let text = ok(&["--exact", "verify", "--certificate", good.to_str().unwrap(), system], "");
    assert!(text.starts_with("passed\nvanishing 5/5\n"), "{text}");

    let plain = scratch("ex0.cert", &ok(&["--exact", "resultant"], EX0));
    ok(&["--exact", "verify", "--certificate", plain.to_str().unwrap(), system], "");

    // Dropping a shift breaks both vanishing and homogeneity.
    let bad = scratch("ex0-bad.cert", &format!("{}\n", EX0_SR.replace("u01@1", "u01")));
    let out = sdres(&["--exact", "verify", "--certificate", bad.to_str().unwrap(), system], "");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("FAILED\nvanishing 0/5\n"));
}

#[test]
fn dense_resultant() {
    let text = ok(&["dense-resultant", "--orders", "0,1", "--degrees", "1,1"], "");
    assert_eq!(text.lines().next(), Some("u00*u01@1*u11 + u00@1*u01*u12 - u01*u01@1*u10"));
    assert!(text.contains("block degrees = [2, 1]\ntotal degree = 3\n"), "{text}");
}

#[test]
fn mixed_volumes() {
    assert_eq!(ok(&["mixed-volume", "--polytope", "0,0;1,0;0,1", "--polytope", "0,0;2,0;0,2"], ""), "2\n");
    let v = json(&["--json", "mixed-volume", "--polytope", "0,0;1,0;0,1", "--polytope", "0,0;2,0;0,2"], "");
    assert_eq!(v["mixed_volume"], "2");
    assert_eq!(ok(&["--exact", "mixed-volume", "--prolong", "1,0"], EX0), "s^0P0: 2\ns^1P0: 2\ns^0P1: 4\n");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], stdin: &str| sdres(args, stdin).status.code();
    assert_eq!(code(&["--exact", "essential"], EX0), Some(0));
    assert_eq!(code(&["essential"], "garbage (\n"), Some(2));
    assert_eq!(code(&["--exact", "resultant"], DEFICIENT), Some(3));
    // The ansatz would have more than 2^128 unknowns.
    let out = sdres(&["dense-resultant", "--orders", "3,3", "--degrees", "4,4"], "");
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("block orders = [3, 3]"));
    // Two polynomials for two main variables is malformed, not a parse error.
    assert_eq!(code(&["essential"], "main y1 y2\nu00 + u01*y1 ; u10 + u11*y1@1\n"), Some(1));
}
