//! End-to-end tests of the `crsym` binary: exit codes, JSON output and
//! process-level determinism.

use std::process::Command;

fn crsym() -> Command {
    Command::new(env!("CARGO_BIN_EXE_crsym"))
}

#[test]
fn validate_ok_exit_zero() {
    let out = crsym()
        .args(["validate", "--expr", "abs2(z1)", "--mu", "1/2"])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("validation: ok"));
}

#[test]
fn validate_invalid_exit_one() {
    let out = crsym()
        .args(["validate", "--expr", "z1^2 + zb1^2", "--mu", "1/2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("pluriharmonic"));
}

#[test]
fn usage_error_exit_two() {
    let out = crsym().args(["symmetries"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // diagnostics go to stderr
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
    let out = crsym()
        .args(["symmetries", "--zoo", "not_a_model"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn symmetries_json_hyperquadric() {
    let out = crsym()
        .args(["symmetries", "--zoo", "hyperquadric1", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["grading"]["total_dim"], 8);
    assert_eq!(v["verdicts"]["grading_shape"], "thm_1_1");
}

#[test]
fn verdicts_for_weighted_sos() {
    let out = crsym()
        .args(["verdicts", "--zoo", "sos_1_4", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdicts"]["grading_shape"], "thm_5_4");
    assert_eq!(v["verdicts"]["jet_order"], 2);
}

#[test]
fn levi_reports_tube_witness() {
    let out = crsym()
        .args([
            "levi",
            "--expr",
            "Re(z1) abs2(z2)",
            "--mu",
            "1/2,1/4",
            "--json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pseudoconvexity"]["status"], "not_psd");
    assert_eq!(v["pseudoconvexity"]["minor_value"], "-1/4");
}

#[test]
fn model_json_file_input() {
    let dir = std::env::temp_dir();
    let path = dir.join("crsym_model_input_test.json");
    std::fs::write(
        &path,
        r#"{"n": 1, "mu": ["1/2"], "P": {"terms": [{"alpha": [1], "beta": [1], "re": "1", "im": "0"}]}}"#,
    )
    .unwrap();
    let out = crsym()
        .args(["symmetries", "--json", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["grading"]["total_dim"], 8);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn sos_model_json_file_input() {
    let dir = std::env::temp_dir();
    let path = dir.join("crsym_model_sos_test.json");
    std::fs::write(
        &path,
        r#"{"sos": {"mu": ["1/2", "1/4"], "Q": ["z1", "z2^2"]}}"#,
    )
    .unwrap();
    let out = crsym()
        .args(["verdicts", "--json", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdicts"]["grading_shape"], "thm_5_4");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn zoo_list_mentions_all_models() {
    let out = crsym().args(["zoo-list"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for name in [
        "hyperquadric1",
        "tube_x1z2",
        "sos_quartic_2var",
        "degenerate_plane",
    ] {
        assert!(text.contains(name), "zoo-list missing {name}");
    }
}

#[test]
fn zoo_run_all_passes_and_is_deterministic() {
    let a = crsym().args(["zoo-run-all", "--json"]).output().unwrap();
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    let b = crsym().args(["zoo-run-all", "--json"]).output().unwrap();
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(
        a.stdout, b.stdout,
        "zoo-run-all output differs between runs"
    );
}

#[test]
fn debug_extended_menu_reports_empty_extras() {
    let out = crsym()
        .args([
            "symmetries",
            "--zoo",
            "quartic_1var",
            "--json",
            "--debug-extended-menu",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["grading"]["extended_menu_extra"], serde_json::json!([]));
}
