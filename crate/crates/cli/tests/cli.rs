//! End-to-end checks of the binary: flags, exit codes, output formats,
//! determinism.

use std::process::Command;

fn rfl() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rfl"))
}

#[test]
fn exponents_figure_point() {
    let out = rfl()
        .args(["exponents", "--d", "5", "--r", "2", "--S", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["payload"]["p0"], serde_json::json!(1.2));
    assert!(text.contains("riesz_constant_formula"));
}

#[test]
fn exponents_rejects_boundary_with_exit_2() {
    let out = rfl()
        .args(["exponents", "--d", "5", "--r", "2", "--S", "2.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("r < S - 1/2"),
        "stderr must name the violated inequality: {err}"
    );
}

#[test]
fn exponents_csv_at_s_ten() {
    // p0(10) = 130/113 by the closed form
    let out = rfl()
        .args([
            "exponents",
            "--d",
            "5",
            "--r",
            "2",
            "--S",
            "10",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let want = 130.0f64 / 113.0;
    let got: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    assert!((got - want).abs() < 1e-14);
}

#[test]
fn figure1_rows_and_determinism() {
    let run = || rfl().args(["figure1", "--steps", "1"]).output().unwrap();
    let a = run();
    assert!(a.status.success());
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    let rows: Vec<&str> = text.trim().lines().collect();
    assert_eq!(rows.len(), 3, "header plus two endpoint rows");
    assert_eq!(rows[0], "S,p0");
    // byte-identical re-run
    let b = run();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn figure1_default_curve_monotone_decreasing() {
    let out = rfl().args(["figure1"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let p0s: Vec<f64> = text
        .trim()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(p0s.len(), 201);
    for w in p0s.windows(2) {
        assert!(w[1] < w[0], "p0(S) must decrease");
    }
    assert!(
        *p0s.last().unwrap() > 8.0 / 7.0,
        "curve approaches 8/7 from above"
    );
}

#[test]
fn figure1_rejects_bad_range() {
    let out = rfl()
        .args(["figure1", "--s-min", "2.0", "--s-max", "3.0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_coarse_grid_fails_with_exit_1() {
    let out = rfl()
        .args(["selftest", "--N", "64", "--dims", "5", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("false"), "some check must fail at N = 64");
}

#[test]
fn selftest_json_is_machine_readable() {
    let out = rfl()
        .args(["selftest", "--N", "512", "--dims", "3", "--format", "json"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["payload"].as_array().unwrap().len() >= 3);
}

#[test]
fn env_var_sets_default_grid() {
    let out = rfl()
        .args(["selftest", "--dims", "5", "--format", "json"])
        .env("RFL_GRID_N", "64")
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(1),
        "N = 64 from the env var must fail"
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["config"]["N"], serde_json::json!(64));
}

#[test]
fn unknown_probe_name_rejected() {
    let out = rfl()
        .args(["probes", "--name", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scaling_probe_runs_on_small_grid() {
    let out = rfl()
        .args([
            "probes", "--name", "scaling", "--q", "2", "--delta", "0.5", "--N", "512",
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["payload"]["exterior"]["passed"], serde_json::json!(true));
    assert_eq!(v["payload"]["interior"]["passed"], serde_json::json!(true));
    assert!(v["grid"]["N"].as_u64().unwrap() == 512);
}

#[test]
fn decay_power_tail_passes_floor() {
    let out = rfl()
        .args([
            "decay",
            "--d",
            "5",
            "--alpha",
            "3",
            "--s",
            "1",
            "--input",
            "power-tail",
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["payload"]["passed"], serde_json::json!(true));
}

#[test]
fn maximize_small_run_reports_constant_below_one() {
    let out = rfl()
        .args([
            "maximize",
            "--d",
            "5",
            "--r",
            "2",
            "--S",
            "3",
            "--restarts",
            "1",
            "--seed",
            "7",
            "--iters",
            "300",
            "--N",
            "256",
            "--oracle-samples",
            "200",
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let c_hat = v["payload"]["result"]["c_hat"].as_f64().unwrap();
    assert!(c_hat > 0.5 && c_hat < 1.0 - 1e-3, "c_hat = {c_hat}");
    assert!(
        v["payload"]["holder_proportionality_defect"]
            .as_f64()
            .unwrap()
            > 0.01
    );
}

#[test]
fn profile_csv_output_written() {
    let dir = std::env::temp_dir().join("rfl_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("u_star.csv");
    let out = rfl()
        .args([
            "maximize",
            "--d",
            "5",
            "--r",
            "2",
            "--S",
            "3",
            "--restarts",
            "1",
            "--iters",
            "50",
            "--N",
            "128",
        ])
        .arg("--profile-out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success() || out.status.code() == Some(1));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("r,value"));
    let sidecar = std::fs::read_to_string(dir.join("u_star.csv.grid.json")).unwrap();
    let meta: serde_json::Value = serde_json::from_str(&sidecar).unwrap();
    assert_eq!(meta["N"], serde_json::json!(128));
}
