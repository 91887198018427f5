//! End-to-end exercises of the command-line interface: output shapes, exit
//! codes, determinism of reports, and the persistent cache round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const QUIVER_JSON: &str =
    r#"{"vertices": ["1", "2"], "arrows": [{"from": "1", "to": "2", "label": "a"}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hallbridge"))
}

fn write_quiver(dir: &Path) -> PathBuf {
    let path = dir.join("quiver.json");
    std::fs::write(&path, QUIVER_JSON).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// "hall numbers: N computed, ..." from the stderr counter line.
fn computed_count(stderr: &str) -> u64 {
    let line = stderr
        .lines()
        .find(|l| l.starts_with("hall numbers:"))
        .unwrap_or_else(|| panic!("no counter line in stderr: {stderr}"));
    line.trim_start_matches("hall numbers:")
        .trim()
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn validate_prints_the_shape_and_fingerprint() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write_quiver(dir.path());
    let out = bin()
        .arg("validate")
        .arg("--quiver")
        .arg(&quiver)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("ok: 2 vertices, 1 arrow, acyclic"), "{text}");
    assert!(text.contains("fingerprint:"), "{text}");
}

#[test]
fn bad_inputs_exit_with_the_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write_quiver(dir.path());
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, r#"{"vertices": ["1"]"#).unwrap();

    // malformed quiver file
    let out = bin()
        .arg("validate")
        .arg("--quiver")
        .arg(&broken)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
    // missing quiver file
    let out = bin()
        .arg("validate")
        .arg("--quiver")
        .arg(dir.path().join("nope.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
    // dimension bound arity must match the vertex count
    let out = bin()
        .arg("validate")
        .arg("--quiver")
        .arg(&quiver)
        .args(["--max-dim", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
    // composite field size
    let out = bin()
        .arg("enumerate")
        .arg("--quiver")
        .arg(&quiver)
        .args(["--q", "6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
    // unknown suite name
    let out = bin()
        .arg("verify")
        .arg("--quiver")
        .arg(&quiver)
        .args(["--suites", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_of(&out));
}

#[test]
fn enumerate_lists_the_five_smallest_classes() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write_quiver(dir.path());
    let out = bin()
        .arg("enumerate")
        .arg("--quiver")
        .arg(&quiver)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout_of(&out).trim_end().ends_with("5 classes"),
        "{}",
        stdout_of(&out)
    );
}

#[test]
fn table_prints_every_product_over_the_window() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write_quiver(dir.path());
    let out = bin()
        .arg("table")
        .arg("--quiver")
        .arg(&quiver)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert_eq!(
        text.lines().filter(|l| l.contains(" = ")).count(),
        25,
        "5x5 products expected"
    );
}

#[test]
fn verify_writes_a_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write_quiver(dir.path());
    let report = dir.path().join("report.json");
    let out = bin()
        .arg("verify")
        .arg("--quiver")
        .arg(&quiver)
        .args(["--suites", "green,pairing", "--jobs", "2", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["config"]["q"], 2);
    assert_eq!(v["config"]["max_dim"], serde_json::json!([1, 1]));
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 2);
    for s in suites {
        assert_eq!(s["failed"], 0, "suite {}", s["suite"]);
        let checks = s["checks"].as_array().unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c["status"] == "pass"));
    }
}

#[test]
fn reports_are_byte_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write_quiver(dir.path());
    let mut bytes = Vec::new();
    for jobs in ["1", "4"] {
        let report = dir.path().join(format!("report-{jobs}.json"));
        let out = bin()
            .arg("verify")
            .arg("--quiver")
            .arg(&quiver)
            .args(["--suites", "assoc,green", "--jobs", jobs, "--out"])
            .arg(&report)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
        bytes.push(std::fs::read(&report).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
}

#[test]
fn a_warm_cache_recomputes_nothing_and_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write_quiver(dir.path());
    let cache = dir.path().join("cache");
    std::fs::create_dir(&cache).unwrap();
    let mut reports = Vec::new();
    let mut computed = Vec::new();
    for run in 0..2 {
        let report = dir.path().join(format!("report-{run}.json"));
        let out = bin()
            .arg("verify")
            .arg("--quiver")
            .arg(&quiver)
            .args(["--suites", "assoc"])
            .arg("--cache")
            .arg(&cache)
            .arg("--out")
            .arg(&report)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
        reports.push(std::fs::read(&report).unwrap());
        computed.push(computed_count(&stderr_of(&out)));
    }
    assert!(computed[0] > 0, "cold run should compute something");
    assert_eq!(computed[1], 0, "warm run should answer from the store");
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn the_audit_reports_a_passing_default() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write_quiver(dir.path());
    let audit = dir.path().join("audit.json");
    let out = bin()
        .arg("audit")
        .arg("--quiver")
        .arg(&quiver)
        .arg("--out")
        .arg(&audit)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&audit).unwrap()).unwrap();
    assert_eq!(v["conclusive"], true);
    assert_eq!(v["default_passes"], true);
    let passing = v["passing"].as_array().unwrap();
    assert!(!passing.is_empty());
    assert!(passing.iter().any(|p| p
        .as_str()
        .unwrap()
        .split(',')
        .all(|s| s.ends_with("symmetric"))));
}

#[test]
fn double_constants_export_structured_rows() {
    let dir = tempfile::tempdir().unwrap();
    let quiver = write_quiver(dir.path());
    let outfile = dir.path().join("constants.json");
    let out = bin()
        .arg("double-constants")
        .arg("--quiver")
        .arg(&quiver)
        .arg("--out")
        .arg(&outfile)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&outfile).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        assert!(row["left"].is_object());
        assert!(row["right"].is_object());
        assert!(row["product"].is_array());
    }
}
