use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hessian-polya"))
}

fn body(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../bodies").join(name)
}

#[test]
fn geom_prints_json() {
    let out = bin().args(["geom", "--body"]).arg(body("square.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["summary"]["volume"], 1.0);
}

#[test]
fn verify_writes_csv_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["verify", "--k", "1,2", "--no-eigen", "--format", "csv", "--body"])
        .arg(body("zoo2d.json"))
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("reports.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4 * 2);
    assert!(!dir.path().join("failures.json").exists());
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(bin().args(["solve", "--bogus"]).status().unwrap().code(), Some(1));
    assert_eq!(bin().args(["geom", "--body", "/nonexistent.json"]).status().unwrap().code(), Some(1));
    let bad = bin().args(["sweep", "--family", "ellipses", "--param", "1:2"]).status().unwrap();
    assert_eq!(bad.code(), Some(1));
    assert_eq!(bin().arg("--help").status().unwrap().code(), Some(0));
}

#[test]
fn coarse_solve_exits_two() {
    let out = bin().args(["solve", "--h", "0.3", "--body"]).arg(body("square.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_emits_rows_and_fit() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["sweep", "--family", "ellipses", "--param", "1:0.25:3:log", "--k", "2", "--no-eigen", "--format", "csv", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap().lines().count(), 4);
    assert!(dir.path().join("asymptotics.csv").exists());
}
