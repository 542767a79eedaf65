use std::process::Command;

use serde_json::Value;

fn hmmdiv() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hmmdiv"))
}

const BUNDLED: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/reference_cases.json");

const SMALL: &str = r#"{
  "cases": [{ "name": "tiny", "family": "A",
    "theta1": { "p00": 0.6, "p11": 0.5, "mu": [1.0, 0.0], "psi": [0.3, 0.1], "sigma": [1.0, 1.3] },
    "theta": { "p00": 0.55, "p11": 0.5, "mu": [0.5, 0.0], "psi": [0.2, 0.1], "sigma": [1.1, 1.3] } }],
  "alphas": [0.5, "kl", 2],
  "mc": { "n": 300, "reps": 5, "burn_in": 20, "seed": 3 },
  "grid": { "N": 8, "a": 8.0, "quad_points": 101 }
}"#;

#[test]
fn print_defaults_is_json() {
    let out = hmmdiv().arg("print-defaults").output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["grid"]["N"], 16);
    assert_eq!(v["mc"]["reps"], 100);
    assert_eq!(v["alphas"][4], "kl");
}

#[test]
fn selftest_passes() {
    let out = hmmdiv().arg("selftest").output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}");
    assert!(stdout.lines().all(|l| l.starts_with("PASS")), "{stdout}");
}

#[test]
fn missing_config_is_an_error() {
    let out = hmmdiv().args(["run", "/nonexistent/cases.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read config"));
}

#[test]
fn bad_thread_count_is_an_error() {
    let out = hmmdiv().arg("print-defaults").env("HMMDIV_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let ok = hmmdiv().arg("print-defaults").env("HMMDIV_THREADS", "0").output().unwrap();
    assert!(ok.status.success());
}

#[test]
fn run_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.json");
    std::fs::write(&cfg, SMALL).unwrap();
    let out_dir = dir.path().join("out");
    let out = hmmdiv()
        .args(["run", cfg.to_str().unwrap(), "--methods", "fredholm", "--out", out_dir.to_str().unwrap()])
        .env("HMMDIV_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(out_dir.join("table.txt")).unwrap();
    assert_eq!(text, String::from_utf8_lossy(&out.stdout));
    let csv = std::fs::read_to_string(out_dir.join("table.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.lines().skip(1).all(|l| l.split(',').nth(3) == Some("")));
    let diag: Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("diagnostics.json")).unwrap()).unwrap();
    let rows = diag.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0]["fredholm"]["eigen_residual"].as_f64().unwrap() <= 1e-10);
    assert!(rows[0]["mc_secs"].is_null());
}

#[test]
fn bundled_config_passes_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = hmmdiv().args(["run", BUNDLED, "--check", "--out", dir.path().to_str().unwrap()]).output().unwrap();
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(out.status.success(), "{stderr}");
    assert!(stderr.contains("checks passed"));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 73);
}

#[test]
fn check_failure_sets_exit_status() {
    // a reference case name with the wrong models must miss its band
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("wrong.json");
    let body = SMALL.replace("\"tiny\"", "\"case1\"").replace("[0.5, \"kl\", 2]", "[0.5]");
    std::fs::write(&cfg, body).unwrap();
    let out = hmmdiv()
        .args(["run", cfg.to_str().unwrap(), "--check", "--out", dir.path().join("o").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL case1 α=0.5"));
}
