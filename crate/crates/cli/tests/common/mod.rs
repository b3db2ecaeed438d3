#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use envelope_cli::api::router;
use envelope_cli::Settings;
use serde_json::Value;
use tower::ServiceExt;

pub fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_envelope"))
        .args(args)
        .env_remove("ENVELOPE_TOL")
        .env_remove("ENVELOPE_BOUNDARY_TOL")
        .env_remove("ENVELOPE_SAMPLES")
        .output()
        .expect("binary runs")
}

pub fn cli_json(args: &[&str]) -> Value {
    let out = cli(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

pub async fn call(method: &str, uri: &str, body: &str) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let resp = router(Settings::default(), None)
        .oneshot(req)
        .await
        .unwrap();
    let status = resp.status();
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX)
        .await
        .unwrap();
    (
        status,
        serde_json::from_slice(&bytes).expect("response is JSON"),
    )
}

pub fn schema(name: &str) -> Value {
    let path =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn assert_valid(name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(name)).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{instance}");
}

/// Twenty equations spanning every regime and degree.
pub const CORPUS: [(u32, f64, f64); 20] = [
    (2, 3.0, 2.0),
    (2, 1.0, -2.0),
    (2, 0.0, 1.0),
    (2, 2.0, 1.0),
    (2, 0.0, 0.0),
    (2, -3.5, 1.25),
    (3, 0.0, 0.0),
    (3, 3.0, 2.0),
    (3, 3.0, 0.0),
    (3, 3.0, 1.0),
    (3, -2.0, 5.0),
    (3, 1.0, 4.0),
    (4, 4.0, 3.0),
    (4, 5.0, 1.0),
    (5, 5.0, -4.0),
    (5, -1.0, 0.3),
    (6, 0.0, 1.0),
    (6, 7.0, -2.0),
    (7, 2.0, 0.5),
    (8, 1e-3, -1e3),
];

pub fn number(v: f64) -> String {
    format!("{v:?}")
}
