//! End-to-end tests of the `qlo` binary: exit codes, file round trips and
//! report formats.

use std::path::Path;
use std::process::{Command, Output};

use qlo::{HermitianOperator, OperatorFile, Tolerances};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_diag(dir: &Path, name: &str, diag: &[f64]) -> String {
    let op = HermitianOperator::from_real_diagonal(diag);
    let path = dir.join(name);
    std::fs::write(&path, OperatorFile::from_operator(&op, None).to_json()).unwrap();
    path.to_string_lossy().into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn check_order_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write_diag(dir.path(), "zero.json", &[0.0, 0.0]);
    let a = write_diag(dir.path(), "a.json", &[1.0, 0.0]);
    let b = write_diag(dir.path(), "b.json", &[1.0, 2.0]);

    // 0 ≼ anything.
    assert_eq!(code(&run(&["check-order", &zero, &b])), 0);
    // diag(1,0) ≼ diag(1,2).
    let out = run(&["check-order", &a, &b]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("holds"), "{text}");
    assert!(text.contains("residual"), "{text}");
    assert!(text.contains("tolerances:"), "{text}");
    // diag(1,2) ⋠ diag(1,0).
    assert_eq!(code(&run(&["check-order", &b, &a])), 1);
}

#[test]
fn check_order_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_diag(dir.path(), "a.json", &[1.0]);
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dim": 2, "matrix": [[[0,0],[1,0]],[[2,0],[0,0]]]}"#,
    )
    .unwrap();
    let out = run(&["check-order", &a, bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
    // Missing file is also an input error.
    assert_eq!(code(&run(&["check-order", &a, "/nonexistent.json"])), 2);
}

#[test]
fn sup_writes_result_and_reports_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_diag(dir.path(), "a.json", &[1.0, 0.0, 0.0]);
    let b = write_diag(dir.path(), "b.json", &[0.0, 2.0, 0.0]);
    let out_path = dir.path().join("s.json");
    let out = run(&["sup", &a, &b, "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);

    let written = OperatorFile::from_json(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let s = written.to_operator(&Tolerances::default()).unwrap();
    let expected = HermitianOperator::from_real_diagonal(&[1.0, 2.0, 0.0]);
    assert!(s.approx_eq(&expected, &Tolerances::default()));
}

#[test]
fn sup_failure_prints_witness() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_diag(dir.path(), "a.json", &[1.0]);
    let b = write_diag(dir.path(), "b.json", &[2.0]);
    let out_path = dir.path().join("s.json");
    let out = run(&[
        "sup", &a, &b, "--out", out_path.to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(code(&out), 1);
    assert!(!out_path.exists());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exists"], serde_json::json!(false));
    assert_eq!(v["witness"]["lambda"], serde_json::json!(1.0));
    assert_eq!(v["witness"]["mu"], serde_json::json!(2.0));
    assert_eq!(v["witness"]["overlap_norm"], serde_json::json!(1.0));
}

#[test]
fn eval_reports_projection_and_rank() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_diag(dir.path(), "a.json", &[1.0, 0.0]);

    let out = run(&["eval", &a, "(0.5,1.5)", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], serde_json::json!(1));
    assert_eq!(v["matrix"][0][0][0], serde_json::json!(1.0));

    let out = run(&["eval", &a, "(-inf,inf)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], serde_json::json!(2));

    let out = run(&["eval", &a, r"[-1,1] \ {0}", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rank"], serde_json::json!(1));

    // Grammar errors carry a position and exit 2.
    let out = run(&["eval", &a, "(0.5,"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn gen_is_deterministic_and_validates_spec() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("g1.json");
    let p2 = dir.path().join("g2.json");
    for p in [&p1, &p2] {
        let out = run(&[
            "gen", "--dim", "3", "--spectrum", "0:1,1:2", "--seed", "42",
            "--out", p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(
        std::fs::read_to_string(&p1).unwrap(),
        std::fs::read_to_string(&p2).unwrap()
    );
    let op = OperatorFile::from_json(&std::fs::read_to_string(&p1).unwrap())
        .unwrap()
        .to_operator(&Tolerances::default())
        .unwrap();
    assert_eq!(op.range_projection(&Tolerances::default()).unwrap().rank(), 2);

    // Multiplicities summing to dim−1 are rejected.
    let out = run(&[
        "gen", "--dim", "3", "--spectrum", "1:2", "--seed", "0",
        "--out", dir.path().join("bad.json").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn tolerance_flags_are_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_diag(dir.path(), "a.json", &[1.0]);
    let out = run(&["check-order", &a, &a, "--tol-cluster", "1e-6"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("cluster=1e-6"));
}
