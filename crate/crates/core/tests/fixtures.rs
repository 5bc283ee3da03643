use std::path::PathBuf;

use walgebra::cli::{compute_j_report, compute_t_report};
use walgebra::report::{load_fixture, save_fixture};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

#[test]
fn golden_j3() {
    let rep = compute_j_report(3, true, true).unwrap();
    let golden = load_fixture(&fixture("compute_j_3.json")).unwrap();
    assert_eq!(rep.comparison_payload(), golden);
}

#[test]
fn golden_t_subreg4() {
    let p = "subreg:4".parse().unwrap();
    let rep = compute_t_report(&p, 2, 2, 1, 2, 0).unwrap();
    let golden = load_fixture(&fixture("compute_t_subreg4_2_2_1_2.json")).unwrap();
    assert_eq!(rep.comparison_payload(), golden);
}

#[test]
fn round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let rep = compute_j_report(4, true, true).unwrap();
    save_fixture(&rep, &path).unwrap();
    let back = load_fixture(&path).unwrap();
    assert_eq!(back, rep.comparison_payload());
    save_fixture(&back, &path).unwrap();
    assert_eq!(load_fixture(&path).unwrap(), back);
}

#[test]
fn schema_violation_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"command": "x"}"#).unwrap();
    assert!(load_fixture(&path).is_err());
}
