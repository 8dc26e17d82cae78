//! End-to-end tests of the qlogmap binary: golden outputs, exit codes,
//! error categories and byte determinism.

use std::path::Path;
use std::process::{Command, Output};

fn qlogmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlogmap"))
        .args(args)
        .output()
        .expect("failed to spawn qlogmap")
}

fn stdout_of(args: &[&str]) -> String {
    let out = qlogmap(args);
    assert!(
        out.status.success(),
        "qlogmap {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn stderr_of_failure(args: &[&str]) -> String {
    let out = qlogmap(args);
    assert!(
        !out.status.success(),
        "qlogmap {args:?} unexpectedly succeeded"
    );
    String::from_utf8(out.stderr).unwrap()
}

#[test]
fn encode_golden() {
    assert_eq!(
        stdout_of(&["encode", "0.1"]),
        include_str!("golden/encode_tenth.csv")
    );
}

#[test]
fn encode_exact_value_has_zero_error() {
    let out = stdout_of(&["encode", "0.5"]);
    assert!(out.contains("hex,0x00008000"));
    assert!(out.contains("error,0"));
}

#[test]
fn encode_errors() {
    let err = stderr_of_failure(&["encode", "70000"]);
    assert!(err.starts_with("error[range]:"), "got {err:?}");
    let err = stderr_of_failure(&["encode", "zero point one"]);
    assert!(err.starts_with("error[parse]:"), "got {err:?}");
}

#[test]
fn iterate_golden_head() {
    assert_eq!(
        stdout_of(&["iterate", "-n", "7"]),
        include_str!("golden/orbit_head_trunc.csv")
    );
    assert_eq!(
        stdout_of(&["iterate", "-n", "7", "--format", "json"]),
        include_str!("golden/orbit_head_trunc.json")
    );
}

#[test]
fn iterate_default_run_shape() {
    let out = stdout_of(&["iterate"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 152); // header + x0 + 150 iterations
    assert!(lines[2].starts_with("1,0x00005C27,"));
}

#[test]
fn iterate_degenerate_and_domain_errors() {
    let out = stdout_of(&["iterate", "-n", "0"]);
    assert_eq!(out.lines().count(), 2);
    let err = stderr_of_failure(&["iterate", "--r", "5"]);
    assert!(err.starts_with("error[domain]:"), "got {err:?}");
    assert!(err.contains("(0, 4]"), "got {err:?}");
    // Malformed literals name the flag they came from.
    let err = stderr_of_failure(&["iterate", "--x0", "zero"]);
    assert!(err.starts_with("error[parse]: --x0:"), "got {err:?}");
}

#[test]
fn compare_golden() {
    assert_eq!(
        stdout_of(&["compare", "-n", "20"]),
        include_str!("golden/compare_n20.csv")
    );
}

#[test]
fn compare_exact_cascade_never_diverges() {
    let out = stdout_of(&["compare", "--x0", "0.5", "-n", "10"]);
    assert!(out.contains("# first_bit_divergence,none"));
    assert!(out.contains("# first_visible_divergence,none"));
    for line in out.lines().filter(|l| !l.starts_with('#')).skip(1) {
        assert!(line.ends_with(",0.0,0"), "nonzero diff in {line:?}");
    }
}

#[test]
fn compare_json_summary() {
    let out = stdout_of(&["compare", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["first_bit_divergence"], 1);
    assert_eq!(doc["first_visible_divergence"], 15);
    assert_eq!(doc["epsilon"], 0.1);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 151);
    assert_eq!(doc["rows"][1]["x_trunc_hex"], "0x00005C27");
    assert_eq!(doc["rows"][1]["x_ceil_hex"], "0x00005C28");
}

#[test]
fn simulate_orbit_equals_iterate_output() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let sim = stdout_of(&[
        "simulate",
        "--it-max",
        "150",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    let pure = stdout_of(&["iterate", "-n", "150"]);
    assert_eq!(
        sim, pure,
        "simulator orbit file must match the pure orbit file"
    );
    assert!(trace.exists());
}

#[test]
fn simulate_trace_golden() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    stdout_of(&[
        "simulate",
        "--it-max",
        "2",
        "--latency",
        "4",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read_to_string(&trace).unwrap(),
        include_str!("golden/trace_itmax2.csv")
    );
}

#[test]
fn simulate_counter_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    let out = stdout_of(&[
        "simulate",
        "--it-max",
        "2047",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(out.lines().count(), 2049); // header + 2048 records

    let err = stderr_of_failure(&["simulate", "--it-max", "2048"]);
    assert!(err.starts_with("error[config]:"), "got {err:?}");
    assert!(err.contains("11-bit"));
}

#[test]
fn simulate_trace_path_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("from_env.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_qlogmap"))
        .args(["simulate", "--it-max", "1"])
        .env("QLOGMAP_TRACE", &trace)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(trace.exists());
    assert!(!Path::new("trace.csv").exists() || dir.path().join("trace.csv") != trace);
}

#[test]
fn lyapunov_report() {
    let out = stdout_of(&["lyapunov"]);
    assert!(out.starts_with("metric,value\n"));
    assert!(out.contains("lambda,0.67611042"), "got {out}");
    assert!(out.contains("n_used,150"));
    assert!(out.contains("skipped,0"));
    assert!(out.contains("reference,0.6931471805599453"));
    let ceil = stdout_of(&[
        "lyapunov",
        "--rounding",
        "ceil",
        "--x0",
        "0.0999908447265625",
    ]);
    assert!(ceil.contains("lambda,0.69528196"), "got {ceil}");
}

#[test]
fn lyapunov_zero_orbit_and_errors() {
    let out = stdout_of(&["lyapunov", "--x0", "0"]);
    assert!(out.contains("lambda,1.38629436"), "got {out}");
    let err = stderr_of_failure(&["lyapunov", "-n", "0"]);
    assert!(err.starts_with("error[insufficient-data]:"), "got {err:?}");
}

#[test]
fn lyapunov_alt_form_row() {
    let out = stdout_of(&["lyapunov", "--alt-form"]);
    assert!(out.contains("lambda_abs_log,1.02391838"), "got {out}");
    let json = stdout_of(&["lyapunov", "--alt-form", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(doc["lambda_abs_log"].is_f64());
}

#[test]
fn outputs_are_byte_deterministic() {
    for args in [
        vec!["compare"],
        vec!["compare", "--format", "json"],
        vec!["iterate", "--rounding", "ceil"],
        vec!["lyapunov", "--format", "json"],
    ] {
        let a = stdout_of(&args);
        let b = stdout_of(&args);
        assert_eq!(a, b, "non-deterministic output for {args:?}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    stdout_of(&["iterate", "-n", "12", "-o", path.to_str().unwrap()]);
    let from_file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(from_file, stdout_of(&["iterate", "-n", "12"]));
}

#[test]
fn ceil_session_encodes_inputs_upward() {
    // The session rounding mode also digitizes the inputs: under ceil,
    // 0.1 becomes raw 6554 rather than 6553.
    let out = stdout_of(&["iterate", "-n", "0", "--rounding", "ceil"]);
    assert!(
        out.lines().nth(1).unwrap().starts_with("0,0x0000199A,"),
        "got {out}"
    );
}
