use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn su3exp(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_su3exp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn json_line(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "expected one line, got {text:?}");
    serde_json::from_str(&text).unwrap()
}

const LAMBDA8: &str = r#"{"coefficients": [0,0,0,0,0,0,0,1], "theta": 1.0}"#;

#[test]
fn compute_from_file_and_stdin() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(LAMBDA8.as_bytes()).unwrap();
    let from_file = su3exp(&["compute", file.path().to_str().unwrap(), "--check"], None);
    assert_eq!(from_file.status.code(), Some(0));
    let from_stdin = su3exp(&["compute", "-", "--check"], Some(LAMBDA8));
    assert_eq!(from_file.stdout, from_stdin.stdout);

    let v = json_line(&from_file);
    assert_eq!(v["method"], "degenerate");
    assert!((v["phi"].as_f64().unwrap() - std::f64::consts::FRAC_PI_6).abs() < 1e-12);
    assert!(v["deviation"].as_f64().unwrap() <= 1e-13);
    let corner = &v["result"][2][2];
    let arg = corner[1].as_f64().unwrap().atan2(corner[0].as_f64().unwrap());
    assert!((arg + 2.0 / 3f64.sqrt()).abs() < 1e-14);
}

#[test]
fn validation_errors_are_single_line_json() {
    let not_hermitian = r#"{"matrix": [[[1,0],[2,0],[0,0]],[[0,0],[-1,0],[0,0]],[[0,0],[0,0],[0,0]]], "theta": 1}"#;
    let not_traceless = r#"{"matrix": [[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0]]], "theta": 1}"#;
    let zero = r#"{"coefficients": [0,0,0,0,0,0,0,0], "theta": 1}"#;
    for (doc, args, kind) in [
        (not_hermitian, &["compute"][..], "NotHermitian"),
        (not_traceless, &["compute"][..], "NotTraceless"),
        (zero, &["compute"][..], "ZeroGenerator"),
        (LAMBDA8, &["compute", "--method", "rodrigues"][..], "NotRodriguesCase"),
        ("{", &["compute"][..], "InvalidDocument"),
    ] {
        let out = su3exp(args, Some(doc));
        assert_eq!(out.status.code(), Some(1), "{kind}");
        assert_eq!(json_line(&out)["error"], kind);
    }
}

#[test]
fn resolvent_and_cayley() {
    let doc = r#"{"coefficients": [0,0,1,0,0,0,0,0], "s": 1.0}"#;
    let out = su3exp(&["cayley"], Some(doc));
    assert_eq!(out.status.code(), Some(0));
    let v = json_line(&out);
    assert!(v["residual"].as_f64().unwrap() <= 1e-12);
    // diag(i, −i, 1)
    assert!((v["result"][0][0][1].as_f64().unwrap() - 1.0).abs() < 1e-15);
    assert!((v["result"][1][1][1].as_f64().unwrap() + 1.0).abs() < 1e-15);

    let out = su3exp(&["resolvent"], Some(doc));
    assert_eq!(out.status.code(), Some(0));
    assert!(json_line(&out)["residual"].as_f64().unwrap() <= 1e-12);

    let out = su3exp(&["resolvent"], Some(LAMBDA8));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_line(&out)["error"], "MissingField");
}

#[test]
fn verify_exit_codes() {
    let out = su3exp(&["verify", "--seed", "42", "--count", "1000"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    for args in [&["verify", "--tol", "-1"][..], &["verify", "--count", "0"][..]] {
        let out = su3exp(args, None);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert_eq!(json_line(&out)["error"], "UsageError");
    }
    // a validation tolerance below rounding rejects samples, which counts as failure
    let out = su3exp(&["verify", "--count", "20", "--tol", "1e-300"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL unitarity seed=42 index="));
}

#[test]
fn bench_csv() {
    let out = su3exp(&["bench", "--count", "50", "--reps", "2", "--format", "csv"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("method,median_ns,max_deviation"));
    let closed: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(closed[0], "closed_form");
    assert!(closed[2].parse::<f64>().unwrap() <= 1e-11);
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = su3exp(&["compute", "--bogus"], Some(LAMBDA8));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_line(&out)["error"], "UsageError");
}
