//! Read-only HTTP API for the browser explorer.

use axum::extract::rejection::QueryRejection;
use axum::extract::{Query, State};
use axum::http::header::{HeaderValue, ACCESS_CONTROL_ALLOW_ORIGIN, CONTENT_TYPE};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use serde::Serialize;

use crate::error::{CliError, CliResult, ErrorCode};
use crate::params::{ParamSpec, Paradox, Params};
use crate::render;
use crate::run::{self, Settings};

#[derive(Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub title: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
}

#[derive(Debug, Serialize)]
pub struct Catalog {
    pub paradoxes: Vec<CatalogEntry>,
}

pub fn catalog() -> Catalog {
    Catalog {
        paradoxes: Paradox::ALL
            .into_iter()
            .map(|p| CatalogEntry {
                name: p.name(),
                title: p.title(),
                summary: p.summary(),
                params: p.params(),
            })
            .collect(),
    }
}

fn body(status: StatusCode, content_type: &'static str, body: String) -> Response {
    (status, [(CONTENT_TYPE, HeaderValue::from_static(content_type))], body).into_response()
}

fn json<T: Serialize>(value: &T) -> Response {
    match serde_json::to_string(value) {
        Ok(s) => body(StatusCode::OK, "application/json", s),
        Err(e) => error(CliError::new(ErrorCode::ServeFailed, e.to_string())),
    }
}

fn error(e: CliError) -> Response {
    let status = StatusCode::from_u16(e.code.http_status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    body(status, "application/json", e.to_json())
}

type RawQuery = Result<Query<Vec<(String, String)>>, QueryRejection>;

/// Splits `paradox` off the query and validates the rest.
fn parse_query(query: RawQuery) -> CliResult<Params> {
    let Query(pairs) = query.map_err(|e| CliError::invalid_parameter("query", format!("malformed query: {e}")))?;
    let mut paradox = None;
    let mut rest = Vec::with_capacity(pairs.len());
    for (k, v) in pairs {
        if k == "paradox" {
            if paradox.replace(v).is_some() {
                return Err(CliError::invalid_parameter("paradox", "parameter \"paradox\" given twice"));
            }
        } else {
            rest.push((k, v));
        }
    }
    let paradox: Paradox = paradox
        .ok_or_else(|| CliError::invalid_parameter("paradox", "missing required parameter \"paradox\""))?
        .parse()?;
    Params::parse(paradox, rest)
}

async fn compute<T, F>(query: RawQuery, f: F) -> CliResult<T>
where
    T: Send + 'static,
    F: FnOnce(Params) -> CliResult<T> + Send + 'static,
{
    let params = parse_query(query)?;
    tokio::task::spawn_blocking(move || f(params))
        .await
        .map_err(|e| CliError::new(ErrorCode::ServeFailed, e.to_string()))?
}

async fn get_catalog() -> Response {
    json(&catalog())
}

async fn get_run(State(settings): State<Settings>, query: RawQuery) -> Response {
    match compute(query, move |p| run::run(&p, &settings)).await {
        Ok(out) => json(&out),
        Err(e) => error(e),
    }
}

async fn get_geometry(query: RawQuery) -> Response {
    match compute(query, |p| run::geometry(&p)).await {
        Ok(g) => json(&g),
        Err(e) => error(e),
    }
}

async fn get_svg(query: RawQuery) -> Response {
    match compute(query, |p| run::geometry(&p).map(|g| render::svg(&g))).await {
        Ok(s) => body(StatusCode::OK, "image/svg+xml", s),
        Err(e) => error(e),
    }
}

async fn not_found() -> Response {
    error(CliError::new(ErrorCode::NotFound, "no such endpoint"))
}

async fn allow_any_origin(mut res: Response) -> Response {
    res.headers_mut()
        .insert(ACCESS_CONTROL_ALLOW_ORIGIN, HeaderValue::from_static("*"));
    res
}

pub fn router(settings: Settings) -> Router {
    Router::new()
        .route("/api/paradoxes", get(get_catalog))
        .route("/api/run", get(get_run))
        .route("/api/geometry", get(get_geometry))
        .route("/api/svg", get(get_svg))
        .fallback(not_found)
        .with_state(settings)
        .layer(axum::middleware::map_response(allow_any_origin))
}

pub async fn serve(port: u16, settings: Settings) -> CliResult<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port))
        .await
        .map_err(|e| CliError::new(ErrorCode::ServeFailed, format!("cannot bind port {port}: {e}")))?;
    let addr = listener
        .local_addr()
        .map_err(|e| CliError::new(ErrorCode::ServeFailed, e.to_string()))?;
    eprintln!("listening on http://{addr}");
    axum::serve(listener, router(settings))
        .await
        .map_err(|e| CliError::new(ErrorCode::ServeFailed, e.to_string()))
}
