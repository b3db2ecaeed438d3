mod common;

use std::process::Command;

use common::{cli, cli_json};
use serde_json::json;

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("envelope-{}-{name}", std::process::id()))
}

#[test]
fn solve_examples() {
    let v = cli_json(&["solve", "--n", "2", "--p", "1", "--q", "-2"]);
    assert_eq!(v["count"], json!(2));
    assert_eq!(v["roots"][0]["value"], json!(-1.0));
    assert_eq!(v["roots"][1]["value"], json!(2.0));

    let v = cli_json(&["solve", "--n", "3", "--p", "0", "--q", "0"]);
    assert_eq!(
        v["roots"],
        json!([{"value": 0.0, "multiplicity": 3, "residual": 0.0}])
    );

    let v = cli_json(&["solve", "--n", "3", "--p", "3", "--q", "2"]);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    assert!((roots[0]["value"].as_f64().unwrap() + 2.0).abs() < 1e-12);
    assert!((roots[1]["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert_eq!(roots[1]["multiplicity"], json!(2));
}

#[test]
fn classify_examples() {
    assert_eq!(
        cli_json(&["classify", "--n", "4", "--p", "4", "--q", "3"]),
        json!({"count": 1, "regime": "OnEnvelope", "discriminant": 0.0})
    );
    let v = cli_json(&["classify", "--n", "6", "--p", "0", "--q", "1"]);
    assert_eq!(
        (v["count"].clone(), v["regime"].clone()),
        (json!(0), json!("Above"))
    );
    let v = cli_json(&["classify", "--n", "3", "--p", "3", "--q", "0"]);
    assert_eq!(
        (v["count"].clone(), v["regime"].clone()),
        (json!(3), json!("OnAxisOdd"))
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        cli(&["solve", "--n", "2", "--p", "abc", "--q", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cli(&["solve", "--n", "2", "--p", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        cli(&["solve", "--n", "1", "--p", "1", "--q", "1"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        cli(&["envelope-csv", "--n", "3", "--p-range", "-1,2"])
            .status
            .code(),
        Some(4)
    );
    let out = cli(&[
        "plot",
        "--kind",
        "envelope",
        "--n",
        "2",
        "--out",
        "/nonexistent-dir/x.svg",
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert!(!out.stderr.is_empty() && out.stdout.is_empty());
}

#[test]
fn flags_beat_environment_beat_defaults() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_envelope"));
        cmd.env_remove("ENVELOPE_SAMPLES");
        if let Some(v) = env {
            cmd.env("ENVELOPE_SAMPLES", v);
        }
        let out = cmd
            .args(["envelope-csv", "--n", "2", "--p-range", "0,1"])
            .args(extra)
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap().lines().count() - 1
    };
    assert_eq!(run(None, &[]), 512);
    assert_eq!(run(Some("7"), &[]), 7);
    assert_eq!(run(Some("7"), &["--samples", "3"]), 3);

    let out = Command::new(env!("CARGO_BIN_EXE_envelope"))
        .env("ENVELOPE_BOUNDARY_TOL", "0.5")
        .args(["classify", "--n", "2", "--p", "2", "--q", "0.9"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["regime"], json!("OnEnvelope"));
}

#[test]
fn envelope_csv_to_file() {
    let path = temp_path("env.csv");
    let out = cli(&[
        "envelope-csv",
        "--n",
        "3",
        "--p-range",
        "0,3",
        "--samples",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "p,e_plus,e_minus\n0,0,0\n3,2,-2\n"
    );
    std::fs::remove_file(path).unwrap();
}

#[test]
fn legendre_of_square_samples() {
    let input = temp_path("square.csv");
    let mut text = String::from("x,f\n");
    for i in 0..=200 {
        let x = -3.0 + 0.03 * i as f64;
        text.push_str(&format!("{x},{}\n", x * x));
    }
    std::fs::write(&input, text).unwrap();
    let out = cli(&[
        "legendre",
        "--input",
        input.to_str().unwrap(),
        "--slopes",
        "-2:2:0.5",
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("p,fstar"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 9);
    for (p, v) in rows {
        assert!((v - p * p / 4.0).abs() <= 5e-3, "p={p} v={v}");
    }
    std::fs::remove_file(input).unwrap();
}

#[test]
fn legendre_check_reports_deviation() {
    let input = temp_path("quartic.csv");
    let mut text = String::from("x,y\n");
    for i in 0..=400 {
        let x = -2.0 + 0.01 * i as f64;
        text.push_str(&format!("{x},{}\n", x.powi(4)));
    }
    std::fs::write(&input, text).unwrap();
    let out_csv = temp_path("quartic-out.csv");
    let out = cli(&[
        "legendre",
        "--input",
        input.to_str().unwrap(),
        "--check",
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(report["passed"], json!(true));
    assert!(report["max_deviation"].as_f64().unwrap() <= 5e-2);
    assert!(std::fs::read_to_string(&out_csv)
        .unwrap()
        .starts_with("p,fstar\n"));

    let bumpy = temp_path("bumpy.csv");
    std::fs::write(&bumpy, "x,y\n0,0\n1,1\n2,0\n").unwrap();
    let out = cli(&["legendre", "--input", bumpy.to_str().unwrap(), "--check"]);
    assert_eq!(out.status.code(), Some(4));
    let out = cli(&["legendre", "--input", bumpy.to_str().unwrap()]);
    assert!(out.status.success());
    for p in [input, out_csv, bumpy] {
        std::fs::remove_file(p).unwrap();
    }
}

#[test]
fn affine_legendre_has_constant_argmax() {
    let input = temp_path("affine.csv");
    std::fs::write(&input, "x,y\n0,1\n0.5,2\n1,3\n").unwrap();
    let out = cli(&[
        "legendre",
        "--input",
        input.to_str().unwrap(),
        "--slopes",
        "0:1:0.5",
    ]);
    // slopes below 2 are maximized at the left sample: f*(p) = p*0 - 1
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "p,fstar\n0,-1\n0.5,-1\n1,-1\n"
    );
    std::fs::remove_file(input).unwrap();
}

#[test]
fn malformed_csv_is_a_domain_error() {
    let input = temp_path("bad.csv");
    std::fs::write(&input, "x,y\n0,1\nzz,2\n").unwrap();
    assert_eq!(
        cli(&["legendre", "--input", input.to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
    std::fs::remove_file(input).unwrap();
    assert_eq!(
        cli(&["legendre", "--input", "/nonexistent.csv"])
            .status
            .code(),
        Some(5)
    );
}
