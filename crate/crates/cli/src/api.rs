//! JSON-over-HTTP front end.
//!
//! Every response is `{ok, payload}` or `{ok, error}`. Bodies that do not
//! parse into the request type get 400; requests that parse but fall
//! outside the mathematical domain, or fail to converge, get 422.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Serialize;
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

use crate::config::Settings;
use crate::error::CliResult;
use crate::payload::{
    classify_op, dual_op, envelope_op, solve_op, tangents_op, EnvelopeRequest, EquationRequest,
};

#[derive(Debug, Serialize)]
pub struct ApiResponse<T> {
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Health {
    pub status: &'static str,
    pub version: &'static str,
}

fn failure(status: StatusCode, error: String) -> Response {
    let body: ApiResponse<()> = ApiResponse {
        ok: false,
        payload: None,
        error: Some(error),
    };
    (status, Json(body)).into_response()
}

fn run<Req, T>(body: &[u8], op: impl FnOnce(&Req) -> CliResult<T>) -> Response
where
    Req: DeserializeOwned,
    T: Serialize,
{
    let req: Req = match serde_json::from_slice(body) {
        Ok(req) => req,
        Err(e) => return failure(StatusCode::BAD_REQUEST, format!("invalid payload: {e}")),
    };
    match op(&req) {
        Ok(payload) => Json(ApiResponse {
            ok: true,
            payload: Some(payload),
            error: None,
        })
        .into_response(),
        Err(e) => failure(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()),
    }
}

type Shared = State<Arc<Settings>>;

async fn health() -> Json<ApiResponse<Health>> {
    Json(ApiResponse {
        ok: true,
        payload: Some(Health {
            status: "ok",
            version: env!("CARGO_PKG_VERSION"),
        }),
        error: None,
    })
}

async fn solve(State(s): Shared, body: Bytes) -> Response {
    run(&body, |r: &EquationRequest| solve_op(r, &s))
}

async fn classify(State(s): Shared, body: Bytes) -> Response {
    run(&body, |r: &EquationRequest| classify_op(r, &s))
}

async fn tangents(State(s): Shared, body: Bytes) -> Response {
    run(&body, |r: &EquationRequest| tangents_op(r, &s))
}

async fn dual(State(s): Shared, body: Bytes) -> Response {
    run(&body, |r: &EquationRequest| dual_op(r, &s))
}

async fn envelope(State(s): Shared, body: Bytes) -> Response {
    run(&body, |r: &EnvelopeRequest| envelope_op(r, &s))
}

/// The API routes, with the UI bundle in `static_dir` mounted under `/`.
pub fn router(settings: Settings, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/health", get(health))
        .route("/api/solve", post(solve))
        .route("/api/classify", post(classify))
        .route("/api/envelope", post(envelope))
        .route("/api/tangents", post(tangents))
        .route("/api/dual", post(dual))
        .with_state(Arc::new(settings));
    let app = match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    };
    app.layer(CorsLayer::permissive())
}

pub async fn serve(
    addr: SocketAddr,
    settings: Settings,
    static_dir: Option<PathBuf>,
) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(settings, static_dir)).await
}
