//! End-to-end runs of the `cychom` binary: exit codes, report shape, and
//! determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cychom"))
}

fn write_spec(dir: &TempDir, name: &str, json: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn verify_universal_defaults_pass() {
    let out = bin().arg("verify-universal").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("campaign: verify-universal"));
    assert!(text.contains("[pass] proposition | universal n=8"));
    assert!(text.contains("summary: 28 passed, 0 failed"));
}

#[test]
fn verify_universal_echoes_lemma_polynomials() {
    let out = bin()
        .args([
            "verify-universal",
            "--n-min",
            "2",
            "--n-max",
            "2",
            "--checks",
            "lemma1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("h'_x(a) - h_x(a) = 1*X0.A1 + 1*X1.A0"));
}

#[test]
fn verify_universal_rejects_bad_range() {
    let out = bin()
        .args(["verify-universal", "--n-min", "1", "--n-max", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn verify_universal_rejects_unknown_check() {
    let out = bin()
        .args(["verify-universal", "--checks", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown check"));
}

#[test]
fn ring_verify_passes_on_a_lawful_ring() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "prod.json",
        r#"{"kind":"cyclic_product","m":2,"k":2,"n":2}"#,
    );
    let out = bin()
        .arg("ring-verify")
        .arg(&spec)
        .args(["--checks", "eq1,lemma1,corollary1,proposition,homotopy"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("[pass] homotopy | cyclic_product m=2 k=2 n=2"));
    assert!(text.contains("x = (1,0)"));
    assert!(text.contains("0 failed"));
}

#[test]
fn ring_verify_homotopy_fails_without_norm_one() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "z4.json", r#"{"kind":"modular_trivial","m":4,"n":2}"#);
    let out = bin()
        .arg("ring-verify")
        .arg(&spec)
        .args(["--checks", "homotopy"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no norm-one element exists"));
}

#[test]
fn ring_verify_with_fixed_x_on_gaussian() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "g5.json", r#"{"kind":"gaussian_conj","m":5,"n":2}"#);
    let out = bin()
        .arg("ring-verify")
        .arg(&spec)
        .args(["--checks", "proposition", "--x", "2+3i"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("[pass] proposition | gaussian_conj m=5 n=2"));
}

#[test]
fn ring_verify_rejects_malformed_spec() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(&dir, "bad.json", r#"{"kind":"no_such_kind"}"#);
    let out = bin().arg("ring-verify").arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ring_verify_rejects_unlawful_spec() {
    // k does not divide n
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "kn.json",
        r#"{"kind":"cyclic_product","m":2,"k":3,"n":2}"#,
    );
    let out = bin().arg("ring-verify").arg(&spec).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("must divide"));
}

#[test]
fn cohomology_reports_vanishing_and_control() {
    let dir = TempDir::new().unwrap();
    let good = write_spec(
        &dir,
        "prod.json",
        r#"{"kind":"cyclic_product","m":2,"k":2,"n":2}"#,
    );
    let out = bin().arg("cohomology").arg(&good).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("ker T / im N: order 1"));
    assert!(text.contains("ker N / im T: order 1"));
    assert!(text.contains("norm-one element: (1,0)"));
    assert!(text.contains("[pass] vanishing"));

    let control = write_spec(&dir, "z4.json", r#"{"kind":"modular_trivial","m":4,"n":2}"#);
    let out = bin().arg("cohomology").arg(&control).output().unwrap();
    // no norm-one element: quotients are reported, no vanishing verdict due
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ker T / im N: order 2"));
    assert!(text.contains("norm-one element: none"));
    assert!(!text.contains("vanishing"));
}

#[test]
fn cohomology_respects_max_enumerate() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "big.json",
        r#"{"kind":"modular_trivial","m":100,"n":2}"#,
    );
    let out = bin()
        .args(["--max-enumerate", "50"])
        .arg("cohomology")
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("raise --max-enumerate"));
}

#[test]
fn cohomology_text_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "prod.json",
        r#"{"kind":"cyclic_product","m":3,"k":3,"n":3}"#,
    );
    let first = bin().arg("cohomology").arg(&spec).output().unwrap();
    let second = bin().arg("cohomology").arg(&spec).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), Some(0));
}

#[test]
fn json_format_is_machine_readable() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "prod.json",
        r#"{"kind":"cyclic_product","m":2,"k":2,"n":2}"#,
    );
    let out = bin()
        .args(["--format", "json"])
        .arg("cohomology")
        .arg(&spec)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["campaign"], "cohomology");
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["records"][0]["tate"]["even_order"], 1);
    assert_eq!(v["records"][0]["tate"]["norm_one"], "(1,0)");
}

#[test]
fn preimage_norm_mode() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "prod.json",
        r#"{"kind":"cyclic_product","m":2,"k":2,"n":2}"#,
    );
    let out = bin()
        .arg("preimage")
        .arg(&spec)
        .args(["--mode", "norm", "--a", "(1,1)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("preimage xa = (1,0)"));
    assert!(text.contains("re-verified"));
}

#[test]
fn preimage_t_mode() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "prod.json",
        r#"{"kind":"cyclic_product","m":2,"k":2,"n":2}"#,
    );
    let out = bin()
        .arg("preimage")
        .arg(&spec)
        .args(["--mode", "t", "--a", "(1,1)", "--x", "(1,0)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("h_x(a) = (0,1)"));
}

#[test]
fn preimage_rejects_ineligible_a() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "prod.json",
        r#"{"kind":"cyclic_product","m":2,"k":2,"n":2}"#,
    );
    let out = bin()
        .arg("preimage")
        .arg(&spec)
        .args(["--mode", "norm", "--a", "(1,0)"]) // not t-invariant
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not t-invariant"));
}

#[test]
fn special_case_pass_and_noninvertible_failure() {
    let dir = TempDir::new().unwrap();
    let z5 = write_spec(&dir, "z5.json", r#"{"kind":"modular_trivial","m":5,"n":2}"#);
    let out = bin().arg("special-case").arg(&z5).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("u = 1/n = 3"));

    let z4 = write_spec(&dir, "z4.json", r#"{"kind":"modular_trivial","m":4,"n":2}"#);
    let out = bin().arg("special-case").arg(&z4).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not invertible"));
}

#[test]
fn table_ring_round_trips_through_the_cli() {
    let dir = TempDir::new().unwrap();
    let spec = write_spec(
        &dir,
        "f4.json",
        // F_4 = {0, 1, w, w+1} with Frobenius x -> x^2 as the automorphism
        r#"{
            "kind": "table",
            "n": 2,
            "elements": ["0", "1", "w", "w+1"],
            "add": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],
            "mul": [[0,0,0,0],[0,1,2,3],[0,2,3,1],[0,3,1,2]],
            "t": [0, 1, 3, 2]
        }"#,
    );
    let out = bin()
        .arg("ring-verify")
        .arg(&spec)
        .args(["--checks", "eq1,proposition,homotopy"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("0 failed"));
}
