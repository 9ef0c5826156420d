//! End-to-end tests of the `chebden` binary: output formats, exit codes and
//! the documented interfaces.

use std::process::{Command, Output};

fn chebden(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebden"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn chebden_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebden"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn eval_reproduces_the_first_plot_curve() {
    let out = chebden(&[
        "eval", "--family", "f2", "--rho", "0.5", "--y", "0.5", "--grid", "-0.9:0.9:181",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "x,value");
    assert_eq!(lines.len(), 182);
    for line in &lines[1..] {
        let (xs, vs) = line.split_once(',').unwrap();
        let x: f64 = xs.parse().unwrap();
        let v: f64 = vs.parse().unwrap();
        let fc = 1.0 / (std::f64::consts::PI * (1.0 - x * x).sqrt());
        let want = fc * 24.0 / 7.0 * (4.0 - 2.0 * x + x * x) / (13.0 - 20.0 * x + 16.0 * x * x);
        assert!((v - want).abs() <= 1e-12, "x={x}");
    }
}

#[test]
fn eval_csv_roundtrips_bit_identically() {
    let out = chebden(&[
        "eval", "--family", "fn", "--a", "0.7,-0.2,0.1", "--grid", "-1:1:17",
    ]);
    assert!(out.status.success());
    for line in &stdout_lines(&out)[1..] {
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), field);
        }
    }
}

#[test]
fn eval_cdf_column_is_monotone() {
    let out = chebden(&[
        "eval", "--family", "f4", "--rho1", "0.6", "--y1", "0.3", "--rho2", "-0.4", "--y2",
        "0.8", "--grid", "-1:1:41", "--cdf",
    ]);
    assert!(out.status.success());
    let values: Vec<f64> = stdout_lines(&out)[1..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] >= w[0]));
    assert!(values[0] >= 0.0 && *values.last().unwrap() <= 1.0);
}

#[test]
fn kernel_diagonal_and_bivariate_arities() {
    let out = chebden(&["kernel", "--id", "event", "--rho", "0.6", "--grid", "0.5:1:2"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    let v: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((v - 1.5625).abs() < 1e-12); // geometric sum at x = 1

    // arity violations are usage errors
    assert_eq!(
        chebden(&["kernel", "--id", "event", "--rho", "0.6", "--y", "0.1", "--grid", "0:1:2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        chebden(&["kernel", "--id", "gu", "--rho", "0.6", "--grid", "0:1:2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn coeffs_emits_b_b_t_json() {
    let out = chebden(&["coeffs", "--a", "0.5,-0.5", "--jmax", "6"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let b = doc["B"].as_f64().unwrap();
    assert!((b - 10.0 / 9.0).abs() < 1e-15);
    assert_eq!(doc["b"].as_array().unwrap().len(), 2);
    let t = doc["t"].as_array().unwrap();
    assert_eq!(t.len(), 7);
    // mirrored poles kill the odd drivers
    assert_eq!(t[1].as_f64().unwrap(), 0.0);
}

#[test]
fn verify_kernels_suite_passes() {
    let out = chebden(&["verify", "--suite", "kernels", "--rho-max", "0.9"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS kernel-oracle-equivalence"));
    assert!(text.contains("0 failed"));
}

#[test]
fn verify_suite_selection_and_env_tolerance() {
    let ok = chebden(&["verify", "--suite", "quadrature"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("PASS"));

    // an unreachable tolerance forces the base-tol checks to fail with exit 1
    let fail = chebden_env(&["verify", "--suite", "coeffs"], "CHEB_VERIFY_TOL", "1e-30");
    assert_eq!(fail.status.code(), Some(1));
    assert!(String::from_utf8(fail.stdout).unwrap().contains("FAIL"));

    let bad_env = chebden_env(&["verify"], "CHEB_VERIFY_TOL", "not-a-number");
    assert_eq!(bad_env.status.code(), Some(2));

    let unknown = chebden(&["verify", "--suite", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn sample_is_deterministic_with_sidecar() {
    let args = [
        "sample", "--family", "f2", "--rho", "0.5", "--y", "0.5", "--count", "50", "--seed",
        "42",
    ];
    let a = chebden(&args);
    let b = chebden(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let values: Vec<f64> = stdout_lines(&a)
        .iter()
        .map(|l| l.parse().unwrap())
        .collect();
    assert_eq!(values.len(), 50);
    assert!(values.iter().all(|v| v.abs() < 1.0));
    // sidecar on stderr for stdout output
    let sidecar: serde_json::Value = serde_json::from_slice(&a.stderr).unwrap();
    assert_eq!(sidecar["seed"].as_u64(), Some(42));
    assert_eq!(sidecar["config"]["family"]["kind"].as_str(), Some("f2"));
    assert_eq!(sidecar["config"]["count"].as_u64(), Some(50));
}

#[test]
fn sample_to_file_writes_json_sidecar() {
    let dir = std::env::temp_dir().join(format!("chebden-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("samples.txt");
    let out = chebden(&[
        "sample", "--family", "fn", "--a", "0.4", "--count", "10", "--seed", "7", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 10);
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("samples.txt.json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["seed"].as_u64(), Some(7));
    assert_eq!(sidecar["config"]["inversion_tolerance"].as_f64(), Some(1e-12));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn table_emits_one_column_per_curve() {
    let out = chebden(&[
        "table",
        "--grid",
        "-0.9:0.9:7",
        "--curve",
        "f2:0.5:0.5",
        "--curve",
        "cdf:f2:0.5:0.5",
        "--curve",
        "fn:0.5;-0.25",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], "x,f2:0.5:0.5,cdf:f2:0.5:0.5,fn:0.5;-0.25");
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[1].split(',').count(), 4);
}

#[test]
fn exit_codes_for_usage_and_domain_errors() {
    // malformed grid: usage
    assert_eq!(
        chebden(&["eval", "--family", "f2", "--rho", "0.5", "--y", "0.5", "--grid", "bad"])
            .status
            .code(),
        Some(2)
    );
    // unknown family: usage
    assert_eq!(
        chebden(&["eval", "--family", "zeta", "--grid", "0:1:2"]).status.code(),
        Some(2)
    );
    // rho outside the domain: domain error
    assert_eq!(
        chebden(&[
            "eval", "--family", "f2", "--rho", "1.5", "--y", "0.0", "--grid", "-0.5:0.5:3",
        ])
        .status
        .code(),
        Some(3)
    );
    // pole parameters too close: domain error
    assert_eq!(
        chebden(&["coeffs", "--a", "0.5,0.5"]).status.code(),
        Some(3)
    );
    // marginals have no CDF: usage
    assert_eq!(
        chebden(&[
            "eval", "--family", "marg-fc", "--rho", "0.5", "--grid", "-0.5:0.5:3", "--cdf",
        ])
        .status
        .code(),
        Some(2)
    );
}
