//! Exit-code contract and JSON-spec handling of the `asytop` binary:
//! 0 = verdict matches / checks pass, 1 = mismatch, 2 = validation error.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_asytop"))
}

#[test]
fn list_presets_names_all_eleven() {
    let out = bin().arg("--list-presets").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let names: Vec<&str> = text.lines().collect();
    assert_eq!(names.len(), 11);
    assert!(names.contains(&"counterexample"));
    assert!(names.contains(&"oracle-validate"));
}

#[test]
fn unknown_preset_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["--preset", "does-not-exist", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_spec_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = bin().arg("--spec").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn undeclared_reference_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dangling.json");
    std::fs::write(
        &path,
        r#"{"name":"x","dimension":2,"truncation":4,
           "recipe":{"op":"toeplitz","args":["missing"]},
           "diagnostic":"uniform"}"#,
    )
    .unwrap();
    let out = bin().arg("--spec").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trust_exhausted_exits_2_and_names_max_usable_m() {
    // phi(z) = z^2 at D = 8 certifies degree 4, so m_max = 6 cannot run
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exhausted.json");
    std::fs::write(
        &path,
        r#"{"name":"x","dimension":1,"truncation":8,
           "maps":{"sq":[[{"exponents":[2],"re":1}]]},
           "recipe":{"op":"compose","args":["sq"]},
           "diagnostic":"uniform",
           "params":{"m_max":6}}"#,
    )
    .unwrap();
    let out = bin()
        .arg("--spec")
        .arg(&path)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("max usable m is 4"),
        "stderr should name the max usable m, got: {err}"
    );
}

#[test]
fn expectation_mismatch_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mismatch.json");
    // a Toeplitz operator is a fixed point, not zero
    std::fs::write(
        &path,
        r#"{"name":"x","dimension":2,"truncation":6,
           "symbols":{"f":[{"mu":[1,0],"nu":[0,0],"re":1}]},
           "recipe":{"op":"toeplitz","args":["f"]},
           "diagnostic":"uniform",
           "params":{"m_max":3,"expect":"converges-to-zero"}}"#,
    )
    .unwrap();
    let out = bin()
        .arg("--spec")
        .arg(&path)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sample_spec_runs_clean() {
    let dir = tempfile::tempdir().unwrap();
    let spec = concat!(env!("CARGO_MANIFEST_DIR"), "/../../specs/shift-counterexample.json");
    let out = bin()
        .args(["--spec", spec, "--no-timestamp", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "stdout: {stdout}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["verdict"], "converges-to-zero");
    assert_eq!(report["checks_passed"], true);
    assert!(report.get("timestamp_unix").is_none());
    // series.csv has the documented header
    let csv = std::fs::read_to_string(dir.path().join("series.csv")).unwrap();
    assert!(csv.starts_with("m,value,bound\n"));
}

#[test]
fn dump_operator_writes_exact_entries() {
    let dir = tempfile::tempdir().unwrap();
    let spec = concat!(env!("CARGO_MANIFEST_DIR"), "/../../specs/shift-counterexample.json");
    let out = bin()
        .args(["--spec", spec, "--no-timestamp", "--dump-operator", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let dump: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("operator.json")).unwrap())
            .unwrap();
    assert_eq!(dump["dimension"], 2);
    // C_phi maps z2^s to z1^s: the (0,1) column hits row (1,0) with omega = 1/2
    let entries = dump["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| {
        e["row"] == serde_json::json!([1, 0])
            && e["col"] == serde_json::json!([0, 1])
            && e["re"] == "1/2"
    }));
    assert!(dir.path().join("operator.csv").exists());
}

#[test]
fn timestamp_is_present_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["--preset", "induction-formula", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert!(report["timestamp_unix"].is_u64());
    let mut sink = std::io::sink();
    let _ = writeln!(sink, "ok");
}
