use std::process::Command;

use walgebra::cli::run;
use walgebra::report::VerificationReport;

fn walg(args: &[&str]) -> i32 {
    run(std::iter::once("walg").chain(args.iter().copied()))
}

#[test]
fn exit_codes() {
    assert_eq!(walg(&["selftest", "--N", "3"]), 0);
    assert_eq!(walg(&["selftest", "--N", "3", "--strict"]), 0);
    assert_eq!(walg(&["check-omega", "--N", "3", "--strict"]), 0);
    // the literal recursion for j_c disagrees with the closed form from N = 4 on
    assert_eq!(walg(&["check-omega", "--N", "4"]), 0);
    assert_eq!(walg(&["check-omega", "--N", "4", "--strict"]), 1);
    assert_eq!(walg(&["verify-whittaker", "--N", "5", "--strict"]), 0);
    assert_eq!(walg(&["frobnicate"]), 2);
    assert_eq!(walg(&["compute-J"]), 2);
    assert_eq!(walg(&["compute-T", "--pyramid", "1,0,2", "--i", "1", "--j", "1", "--x", "0", "--r", "1"]), 2);
    assert_eq!(walg(&["compute-T", "--pyramid", "subreg:4", "--i", "9", "--j", "1", "--x", "0", "--r", "1"]), 2);
}

#[test]
fn compute_j_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("j3.json");
    let code = walg(&["compute-J", "--N", "3", "--compare", "--strict", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let rep = VerificationReport::load(&path).unwrap();
    assert_eq!(rep.n, 3);
    let conv = rep.check("closed_form_convention").unwrap();
    assert_eq!(conv.witness["diffs"].as_array().unwrap().len(), 0);
    assert!(rep.passed());
}

#[test]
fn binary_honours_thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_walg"))
        .args(["compute-T", "--pyramid", "subreg:4", "--i", "2", "--j", "2", "--x", "1", "--r", "2", "--truncate", "1", "--format", "json"])
        .env("WALG_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let rep: VerificationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.command, "compute-T");
    let bad = Command::new(env!("CARGO_BIN_EXE_walg"))
        .args(["selftest", "--N", "3"])
        .env("WALG_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
