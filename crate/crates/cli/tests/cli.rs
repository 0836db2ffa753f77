use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kinclose(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kinclose")).args(args).output().expect("spawn kinclose")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

const SHEAR: &str = r#"
n_cells = 16
domain_length = 1.0
cfl = 0.9
t_end = 0.4

[v_grid]
n_per_axis = 8
half_width = 5.0

[tau_model]
kind = "constant"
tau = 0.02

[initial]
preset = "shear_wave"
rho = 1.0
theta = 1.0
amplitude = 0.01
"#;

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.toml");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(kinclose(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_thermo_is_deterministic() {
    let a = kinclose(&["verify", "thermo"]);
    let b = kinclose(&["verify", "thermo"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["pass"], true);
    assert!(!v["checks"].as_array().unwrap().is_empty());
}

#[test]
fn verify_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = kinclose(&["verify", "scaling", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file = std::fs::read(dir.path().join("verify_scaling.json")).unwrap();
    assert_eq!(file, out.stdout);
}

#[test]
fn tiny_tolerance_scale_fails_checks() {
    let out = kinclose(&["verify", "scaling", "--tolerance-scale", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn closure_shear_matches_newtonian_stress() {
    let out = kinclose(&["closure", "--dd", "1,-0.5,-0.5,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let nu = num(&v["inputs"]["nu"]);
    let dev = &v["stress_deviation"];
    let expected = [[1.0, 0.0, 0.0], [0.0, -0.5, 0.0], [0.0, 0.0, -0.5]];
    for i in 0..3 {
        for j in 0..3 {
            let got = num(&dev[i][j]);
            assert!((got - 2.0 * nu * expected[i][j]).abs() < 1e-12, "({i},{j}): {got}");
        }
    }
    assert!(num(&v["constraint_residual"]) < 1e-10);
}

#[test]
fn closure_at_zero_affinity() {
    let v = json(&kinclose(&["closure"]));
    assert!(v["tau_star"].is_null());
    for x in v["heat_flux"].as_array().unwrap() {
        assert_eq!(num(x), 0.0);
    }
    for row in v["stress_deviation"].as_array().unwrap() {
        for x in row.as_array().unwrap() {
            assert_eq!(num(x), 0.0);
        }
    }
}

#[test]
fn alpha_changes_tau_star_only() {
    let args = ["closure", "--dd", "0.3,0,-0.3,0.1,0,0", "--grad-theta", "0.2,0,0"];
    let a = json(&kinclose(&args));
    let mut with_alpha = args.to_vec();
    with_alpha.extend(["--alpha", "2"]);
    let b = json(&kinclose(&with_alpha));
    assert_eq!(a["stress"], b["stress"]);
    assert_eq!(a["heat_flux"], b["heat_flux"]);
    assert_ne!(a["tau_star"], b["tau_star"]);
}

#[test]
fn negative_quartic_is_rejected() {
    let out = kinclose(&["closure", "--dd", "1,0,0,0,0,0", "--quartic-eps", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scaling_reports_half_lambda() {
    let v = json(&kinclose(&["scaling", "--lambda", "1.5"]));
    assert!((num(&v["fitted_exponent"]) - 0.75).abs() < 1e-6);
    assert_eq!(v["within_validity_range"], true);
    let v = json(&kinclose(&["scaling", "--lambda", "2.5"]));
    assert_eq!(v["within_validity_range"], false);
}

#[test]
fn missing_config_is_usage_error() {
    assert_eq!(kinclose(&["simulate", "/nonexistent/run.toml"]).status.code(), Some(2));
}

#[test]
fn malformed_config_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &SHEAR.replace("cfl = 0.9", "cfl = 0.9\nbogus = 3"));
    let out = kinclose(&["simulate", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn zero_end_time_gives_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &SHEAR.replace("t_end = 0.4", "t_end = 0.0"));
    let out = kinclose(&["simulate", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("series.csv")).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "t,mass,px,py,pz,energy,H,min_xi,amp_shear");
}

#[test]
fn shear_run_writes_viscosity() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SHEAR);
    let out = kinclose(&["simulate", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("summary.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert!(num(&v["max_conservation_drift"]) < 1e-12);
    assert!(num(&v["shear"]["nu_effective"]) > 0.0);
    assert!(num(&v["run"]["min_relative_entropy_change"]) >= -1e-12);
}
