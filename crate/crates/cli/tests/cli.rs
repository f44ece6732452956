//! End-to-end tests of the `hmink` binary: exit codes, output formats,
//! determinism, config handling.

use std::process::{Command, Output};

fn hmink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_optimal_quotient() {
    let out = hmink(&["eval", "--surface", "pm:L=0.25", "--quotient", "mink"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text.split_whitespace().last().unwrap().parse().unwrap();
    let expect = (18.0 * std::f64::consts::PI).powf(1.0 / 3.0);
    assert!((value - expect).abs() < 1e-9, "{text}");
}

#[test]
fn eval_volume_closed_value() {
    let out = hmink(&["eval", "--surface", "pansu:R=1", "--functional", "volume"]);
    assert!(out.status.success());
    let value: f64 = stdout(&out)
        .split_whitespace()
        .last()
        .unwrap()
        .parse()
        .unwrap();
    let expect = 3.0 * std::f64::consts::PI.powi(2) / 8.0;
    assert!((value - expect).abs() < 1e-9);
}

#[test]
fn malformed_surface_exits_2() {
    let out = hmink(&["eval", "--surface", "bogus", "--quotient", "mink"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_selector_exits_2() {
    let out = hmink(&["eval", "--surface", "pansu:R=1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_failure_exits_3() {
    // the plane is minimal, so the inverse-curvature total is undefined
    let out = hmink(&["eval", "--surface", "plane", "--functional", "timc"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = [
        "eval",
        "--surface",
        "koranyi:R=1",
        "--quotient",
        "all",
        "--out",
        "json",
    ];
    let a = hmink(&args);
    let b = hmink(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("\"tool_version\""));
    assert!(text.contains("\"command\""));
    assert!(text.contains("\"config\""));
    // 17 significant digits
    assert!(text.contains("e0") || text.contains("e-"));
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let args = [
        "sweep",
        "--family",
        "pm",
        "--quotient",
        "mink",
        "--from",
        "0.1",
        "--to",
        "0.5",
        "--steps",
        "9",
    ];
    let a = hmink(&args);
    let b = hmink(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("L,mink\n"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn sweep_empty_range_exits_2() {
    let out = hmink(&[
        "sweep",
        "--family",
        "pm",
        "--quotient",
        "mink",
        "--from",
        "0.5",
        "--to",
        "0.1",
        "--steps",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = hmink(&[
        "sweep",
        "--family",
        "pm",
        "--quotient",
        "mink",
        "--from",
        "0.1",
        "--to",
        "0.5",
        "--steps",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_minimum_near_quarter() {
    let out = hmink(&[
        "sweep",
        "--family",
        "pm",
        "--quotient",
        "mink",
        "--from",
        "0.05",
        "--to",
        "0.5",
        "--steps",
        "100",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut best = (f64::NAN, f64::INFINITY);
    for line in text.lines().skip(1) {
        let mut parts = line.split(',');
        let l: f64 = parts.next().unwrap().parse().unwrap();
        let v: f64 = parts.next().unwrap().parse().unwrap();
        if v < best.1 {
            best = (l, v);
        }
    }
    // grid point closest to 1/4
    let grid_step = 0.45 / 99.0;
    assert!((best.0 - 0.25).abs() <= 0.5 * grid_step + 1e-12, "{best:?}");
}

#[test]
fn pansu_hk_sweep_decreases_through_one() {
    let out = hmink(&[
        "sweep",
        "--family",
        "pansu",
        "--quotient",
        "hk",
        "--from",
        "0.9",
        "--to",
        "1.1",
        "--steps",
        "5",
    ]);
    assert!(out.status.success());
    let values: Vec<f64> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 5);
    for w in values.windows(2) {
        assert!(w[1] < w[0], "{values:?}");
    }
}

#[test]
fn el_emits_small_defects_for_critical_sphere() {
    let out = hmink(&["el", "--L", "0.3", "--samples", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("s,residual,scale,defect\n"));
    for line in text.lines().skip(1) {
        let defect: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!(defect < 1e-9, "{line}");
    }
}

#[test]
fn stability_json_reports_fields() {
    let out = hmink(&["stability", "--L", "0.25"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for field in [
        "\"L\"",
        "\"mode\"",
        "\"value\"",
        "\"lower_bound\"",
        "\"margin\"",
        "\"M_star\"",
    ] {
        assert!(text.contains(field), "missing {field} in {text}");
    }
    let out = hmink(&[
        "stability",
        "--L",
        "0.5",
        "--mode",
        "angular",
        "--delta-frac",
        "0.3",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"M_star\": 4"));
}

#[test]
fn eps_csv_layout() {
    let out = hmink(&[
        "eps",
        "--surface",
        "cylinder:r=1",
        "--eps",
        "0.5,0.1",
        "--samples",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("s,eps,H_eps,H_h,defect\n"));
    assert_eq!(text.lines().count(), 7);
    for line in text.lines().skip(1) {
        let defect: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
        assert!(defect < 1e-12, "cylinder is exact: {line}");
    }
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = hmink(&["verify", "--out", "json"]);
    assert_eq!(a.status.code(), Some(0));
    let b = hmink(&["verify", "--out", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("\"symbolic\": \"pi^2\""));
    assert!(text.contains("(18*pi)^(1/3)"));
}

#[test]
fn verify_with_loose_tolerance_still_passes() {
    let out = hmink(&["verify", "--rel-tol", "1e-2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_with_corrupted_constant_fails() {
    let out = hmink(&["verify", "--corrupt-constant"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn config_file_overrides_tolerances() {
    let dir = std::env::temp_dir().join("hmink-cli-test-config");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("conf.toml");
    std::fs::write(&path, "[quadrature]\nrel_tol = 1e-6\nabs_tol = 1e-8\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hmink"))
        .args([
            "eval",
            "--surface",
            "pansu:R=1",
            "--functional",
            "area",
            "--out",
            "json",
        ])
        .env("HMINK_CONFIG", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("\"rel_tol\": 9.9999999999999995e-7"),
        "{text}"
    );

    // a broken config is a usage error
    std::fs::write(&path, "[quadrature]\nrel_tol = \"soon\"\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hmink"))
        .args(["eval", "--surface", "pansu:R=1", "--functional", "area"])
        .env("HMINK_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = std::env::temp_dir().join("hmink-cli-test-config2");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("conf.toml");
    std::fs::write(&path, "[quadrature]\nrel_tol = 1e-4\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hmink"))
        .args([
            "eval",
            "--surface",
            "pansu:R=1",
            "--functional",
            "area",
            "--rel-tol",
            "1e-9",
            "--out",
            "json",
        ])
        .env("HMINK_CONFIG", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"rel_tol\": 1.0000000000000001e-9"));
}

#[test]
fn seeded_stability_is_reproducible() {
    let args = ["stability", "--L", "0.25", "--seed", "42"];
    let a = hmink(&args);
    let b = hmink(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
