use std::process::{Command, Output};

use serde_json::Value;

fn littlewood(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_littlewood"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn real_norm() {
    let out = littlewood(&["norm", "--coeffs", "1,1,1,-1", "--field", "real"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "norm");
    assert_eq!(num(&v["result"]["norm"]["value"]), 2.0);
    assert!(v["version"].is_string());
}

#[test]
fn complex_norm_with_oracle() {
    let out = littlewood(&[
        "norm", "--coeffs", "1,1,1,-1", "--field", "complex", "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((num(&v["result"]["norm"]["value"]) - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-15);
    assert!(num(&v["result"]["oracle"]["gap"]) < 1e-8);
}

#[test]
fn bad_coefficients_exit_2() {
    assert_eq!(
        littlewood(&["norm", "--coeffs", "1,x,0,0", "--field", "real"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        littlewood(&["norm", "--coeffs", "1,0,0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        littlewood(&["norm", "--coeffs", "1,inf,0,0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        littlewood(&["norm", "--field", "quaternion", "--coeffs", "1,0,0,0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn matrix_order_reads_row_major() {
    let a = json(&littlewood(&[
        "norm", "--coeffs", "1,2,3,4", "--order", "matrix",
    ]));
    let c = &a["inputs"]["coeffs"];
    assert_eq!((num(&c["a21"]), num(&c["a12"])), (3.0, 2.0));
}

#[test]
fn classify_examples() {
    let v = json(&littlewood(&["classify", "--coeffs", "0.5,0.5,0.5,-0.5"]));
    assert_eq!(v["result"]["verdict"], "extreme");
    assert_eq!(v["result"]["matched"]["kind"], "half_form");

    let v = json(&littlewood(&["classify", "--coeffs", "0.5,0.5,0,0"]));
    assert_eq!(v["result"]["verdict"], "not_extreme");
    let w = &v["result"]["witness"];
    for k in ["a11", "a21"] {
        let mid = (num(&w["a"][k]) + num(&w["b"][k])) / 2.0;
        assert_eq!(mid, 0.5);
    }

    let v = json(&littlewood(&["classify", "--coeffs", "2,0,0,0"]));
    assert_eq!(v["result"]["verdict"], "outside_ball");
}

#[test]
fn unit_step_scan_with_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let rows = dir.path().join("rows.csv");
    let out = littlewood(&[
        "scan",
        "--step",
        "1.0",
        "--field",
        "real",
        "--out",
        report.to_str().unwrap(),
        "--csv",
        rows.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = json(&out);
    assert_eq!(summary["result"]["points_scanned"], 80);
    assert_eq!(summary["result"]["argmax_count"], 8);

    let full: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!((num(&full["result"]["max_ratio"]) - std::f64::consts::SQRT_2).abs() < 1e-9);
    assert_eq!(full["result"]["argmax_list"].as_array().unwrap().len(), 8);

    let mut reader = csv::Reader::from_path(&rows).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["a11", "a21", "a12", "a22", "norm", "ratio"]
    );
    assert_eq!(reader.records().count(), 80);
}

#[test]
fn scan_prints_report_without_out() {
    let v = json(&littlewood(&[
        "scan", "--step", "0.5", "--field", "complex", "--box", "-1,1",
    ]));
    assert!((num(&v["result"]["max_ratio"]) - 1.0).abs() < 1e-9);
    assert_eq!(v["result"]["points_scanned"], 624);
}

#[test]
fn scan_errors() {
    let out = littlewood(&[
        "scan",
        "--step",
        "1",
        "--out",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        littlewood(&["scan", "--step", "0.3"]).status.code(),
        Some(2)
    );
    assert_eq!(littlewood(&["scan", "--box", "1"]).status.code(), Some(2));
}

#[test]
fn verify_lemmas_examples() {
    let out = littlewood(&["verify-lemmas", "--samples", "1", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["maxpos"]["failed"], 0);
    assert_eq!(
        littlewood(&["verify-lemmas", "--samples", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["verify-lemmas", "--samples", "20000", "--seed", "7"];
    let one = Command::new(env!("CARGO_BIN_EXE_littlewood"))
        .args(args)
        .env("LITTLEWOOD_THREADS", "1")
        .output()
        .unwrap();
    let three = Command::new(env!("CARGO_BIN_EXE_littlewood"))
        .args(args)
        .env("LITTLEWOOD_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);

    let scan = ["scan", "--step", "0.25", "--field", "complex"];
    assert_eq!(littlewood(&scan).stdout, littlewood(&scan).stdout);
}

#[test]
fn invalid_thread_cap_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_littlewood"))
        .args(["norm", "--coeffs", "1,0,0,0"])
        .env("LITTLEWOOD_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
