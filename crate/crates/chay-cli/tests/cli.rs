//! End-to-end checks of the `chay` binary: exit codes, file formats, and
//! the reproducibility contract (same configuration -> identical bytes).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn chay(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chay"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chay-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn simulate_then_classify_bursting() {
    let dir = tmpdir("burst");
    let out = chay(
        &[
            "simulate", "--gkca", "11.5", "--v0", "-50", "--n0", "0.1", "--ca0", "0.48", "--t",
            "60", "--out", "traj.csv",
        ],
        &dir,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.join("traj.csv")).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("# {"), "missing JSON header: {first}");
    let header: serde_json::Value = serde_json::from_str(&first[2..]).unwrap();
    assert_eq!(header["params"]["g_kca"], 11.5);
    assert_eq!(text.lines().nth(1).unwrap(), "t,V,n,Ca");

    let out = chay(&["classify", "traj.csv"], &dir);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let label: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(label["kind"], "Bursting", "{label}");
}

#[test]
fn simulate_is_bitwise_reproducible() {
    let dir = tmpdir("repro");
    for name in ["a.csv", "b.csv"] {
        let out = chay(
            &["simulate", "--gkca", "10", "--t", "2", "--out", name],
            &dir,
        );
        assert!(out.status.success());
    }
    let a = std::fs::read(dir.join("a.csv")).unwrap();
    let b = std::fs::read(dir.join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tmpdir("usage");
    let out = chay(
        &["simulate", "--gkca", "10", "--t", "0", "--out", "x.csv"],
        &dir,
    );
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(
        msg.contains("horizon"),
        "message should name the precondition: {msg}"
    );

    let out = chay(&["frobnicate"], &dir);
    assert_eq!(out.status.code(), Some(2));

    let out = chay(&["simulate", "--no-such-flag", "1", "--out", "x.csv"], &dir);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    let dir = tmpdir("domain");
    // A non-finite initial state is a numeric domain error, not usage.
    let out = chay(
        &[
            "simulate", "--gkca", "10", "--v0", "nan", "--t", "1", "--out", "x.csv",
        ],
        &dir,
    );
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn config_file_merges_with_flag_precedence() {
    let dir = tmpdir("config");
    std::fs::write(
        dir.join("cfg.json"),
        r#"{"params": {"g_kca": 54.068, "g_l": 7.0}}"#,
    )
    .unwrap();
    // Config alone.
    let out = chay(
        &[
            "simulate", "--config", "cfg.json", "--t", "1", "--out", "c.csv",
        ],
        &dir,
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("c.csv")).unwrap();
    let header: serde_json::Value =
        serde_json::from_str(&text.lines().next().unwrap()[2..]).unwrap();
    assert_eq!(header["params"]["g_kca"], 54.068);
    // Flag wins over config.
    let out = chay(
        &[
            "simulate", "--config", "cfg.json", "--gkca", "12.5", "--t", "1", "--out", "f.csv",
        ],
        &dir,
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("f.csv")).unwrap();
    let header: serde_json::Value =
        serde_json::from_str(&text.lines().next().unwrap()[2..]).unwrap();
    assert_eq!(header["params"]["g_kca"], 12.5);
    // Unknown parameter name is a usage error.
    std::fs::write(dir.join("bad.json"), r#"{"params": {"g_bogus": 1.0}}"#).unwrap();
    let out = chay(
        &[
            "simulate", "--config", "bad.json", "--t", "1", "--out", "x.csv",
        ],
        &dir,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn find_boundaries_reports_four_points() {
    let dir = tmpdir("bounds");
    let out = chay(&["find-boundaries", "--out", "b.json"], &dir);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("b.json")).unwrap()).unwrap();
    let boundaries = doc["boundaries"].as_array().unwrap();
    assert_eq!(boundaries.len(), 4);
    let hopf1 = &boundaries[1];
    assert_eq!(hopf1["kind"], "HopfSupercritical");
    let v = hopf1["v_m"].as_f64().unwrap();
    assert!((v - -26.75527972).abs() < 1e-4, "hopf1 at {v}");
    let w = hopf1["hopf_frequency"].as_f64().unwrap();
    assert!((w - 97.171).abs() < 0.01);
}

#[test]
fn hysteresis_writes_loop_and_sidecar() {
    let dir = tmpdir("loop");
    let out = chay(
        &[
            "hysteresis",
            "--element",
            "kv",
            "--frequency",
            "1e5",
            "--out",
            "loop.csv",
        ],
        &dir,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(dir.join("loop.csv")).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "t,v,i");
    let metrics: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("loop.metrics.json")).unwrap())
            .unwrap();
    assert!(metrics["lobe_area"].as_f64().unwrap().abs() > 0.0);
    assert!(
        metrics["origin_residual"].as_f64().unwrap()
            <= 1e-6 * metrics["max_abs_i"].as_f64().unwrap()
    );
}

#[test]
fn dc_curve_carries_params_comment() {
    let dir = tmpdir("dc");
    let out = chay(
        &[
            "dc-curve",
            "--gkca",
            "10",
            "--v-min",
            "-80",
            "--v-max",
            "40",
            "--samples",
            "5",
            "--out",
            "dc.csv",
        ],
        &dir,
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("dc.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# {"));
    assert!(lines[1].starts_with("# params: {"));
    assert_eq!(lines[2], "V_mV,I");
    assert_eq!(lines.len(), 3 + 5);

    let out = chay(
        &[
            "dc-curve",
            "--kind",
            "gkca",
            "--v-min",
            "-55",
            "--v-max",
            "-22",
            "--samples",
            "5",
            "--out",
            "locus.csv",
        ],
        &dir,
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("locus.csv")).unwrap();
    assert!(text.lines().nth(2).unwrap() == "V_mV,gKCa_per_s");
}

#[test]
fn small_signal_emits_named_coefficients() {
    let dir = tmpdir("ss");
    let out = chay(&["small-signal", "--vm", "-50", "--out", "y.json"], &dir);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("y.json")).unwrap()).unwrap();
    for key in ["b3", "b2", "b1", "b0", "a2", "a1", "a0", "Vm", "gKCa"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    // b3/a2 = C_m.
    let ratio = doc["b3"].as_f64().unwrap() / doc["a2"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() < 1e-12);
}

#[test]
fn reproduce_fig4_passes_and_writes_report() {
    let dir = tmpdir("fig4");
    let out = chay(&["reproduce", "fig4", "--out-dir", "out"], &dir);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("out/report.json")).unwrap())
            .unwrap();
    assert_eq!(report["failed"], 0);
    assert!(dir.join("out/mixed_100Hz.csv").exists());
}

#[test]
fn spectra_single_point_json() {
    let dir = tmpdir("spectra");
    let out = chay(&["spectra", "--vm", "-50", "--out", "s.json"], &dir);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("s.json")).unwrap()).unwrap();
    assert_eq!(doc["poles"].as_array().unwrap().len(), 2);
    assert_eq!(doc["zeros"].as_array().unwrap().len(), 3);
    assert_eq!(doc["eigenvalues"].as_array().unwrap().len(), 3);
    // Usage error when neither --vm nor a range is given.
    let out = chay(&["spectra", "--out", "s.json"], &dir);
    assert_eq!(out.status.code(), Some(2));
}
