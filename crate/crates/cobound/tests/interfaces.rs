//! The file formats and the command-line binary, exercised from outside:
//! round-trips through disk, exit codes, and byte-stable JSON reports.

use cobound::groups::catalog;
use cobound::io::{
    read_group_text, read_matrix_json, read_matrix_text, write_group_text, write_matrix_json,
    write_matrix_text,
};
use cobound::linalg::gaussian;
use cobound::trial_rng;
use std::path::PathBuf;
use std::process::Command;

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cobound-{}-{name}", std::process::id()))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cobound"))
}

#[test]
fn matrix_formats_round_trip_through_disk() {
    let mut rng = trial_rng(0xf11e, 0);
    let m = gaussian(4, 3, &mut rng);

    let p = scratch("matrix.txt");
    std::fs::write(&p, write_matrix_text(&m)).unwrap();
    let back = read_matrix_text(&std::fs::read_to_string(&p).unwrap()).unwrap();
    std::fs::remove_file(&p).unwrap();
    assert_eq!(back.sub(&m).max_abs(), 0.0);

    let p = scratch("matrix.json");
    std::fs::write(&p, write_matrix_json(&m)).unwrap();
    let back = read_matrix_json(&std::fs::read_to_string(&p).unwrap()).unwrap();
    std::fs::remove_file(&p).unwrap();
    assert_eq!(back.sub(&m).max_abs(), 0.0);
}

#[test]
fn group_format_round_trips_and_revalidates() {
    let cat = catalog("s3").unwrap();
    let text = write_group_text(&cat.group, &cat.irreps);
    let (group, irreps) = read_group_text(&text).unwrap();
    assert_eq!(group.order(), 6);
    assert_eq!(irreps.len(), 3);
    let rebuilt = cobound::groups::IrrepCatalog { group, irreps };
    rebuilt.validate().unwrap();
}

#[test]
fn cli_exits_zero_on_a_passing_run() {
    let out = bin().args(["kesten", "--group", "s3", "--trials", "3"]).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"), "stdout: {text}");
}

#[test]
fn cli_exits_one_when_a_check_fails() {
    // An SDP value matches the dimension to ~1e-7, never to 1e-12.
    let out = bin().args(["transpose-norm", "--n", "2", "--tol", "1e-12"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("FAIL"), "stderr: {err}");
}

#[test]
fn cli_exits_two_on_invalid_configuration() {
    for args in [
        vec!["kesten", "--trials", "0"],
        vec!["frobnicate"],
        vec!["kesten", "--no-such-flag"],
        vec!["schatten-identities", "--p", "0.5"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn json_reports_are_byte_identical_for_equal_configs() {
    let run = || {
        let out = bin()
            .args(["cob-schur", "--n", "2", "--trials", "2", "--seed", "5", "--format", "json"])
            .output()
            .unwrap();
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        // Wall-clock fields are the one permitted difference.
        v["wall_ms"] = 0.into();
        for rec in v["records"].as_array_mut().unwrap() {
            rec["wall_ms"] = 0.into();
        }
        serde_json::to_vec(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn different_seeds_change_the_report() {
    let run = |seed: &str| {
        let out = bin()
            .args(["cob-schur", "--n", "2", "--trials", "1", "--seed", seed, "--format", "json"])
            .output()
            .unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["records"][0]["inputs_digest"].as_str().unwrap().to_string()
    };
    assert_ne!(run("1"), run("2"));
}

#[test]
fn out_flag_writes_a_schema_tagged_file() {
    let p = scratch("report.json");
    let out = bin()
        .args(["kesten", "--group", "cyclic:4", "--trials", "2", "--format", "json"])
        .arg("--out")
        .arg(&p)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    std::fs::remove_file(&p).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "kesten");
    assert_eq!(v["pass"], true);
}
