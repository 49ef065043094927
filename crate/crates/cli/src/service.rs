//! JSON-over-HTTP service used by the browser client.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use aflayer::render::SolveMode;
use aflayer::{Format, Palette};
use axum::extract::rejection::JsonRejection;
use axum::extract::{DefaultBodyLimit, Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;

use crate::request::{solve, SolveError, SolveRequest};

pub const BODY_LIMIT: usize = 5 * 1024 * 1024;
pub const DEFAULT_EXACT_LIMIT: usize = 150;

#[derive(Clone, Debug)]
pub struct ServiceConfig {
    pub instances: Option<PathBuf>,
    /// Exact and both modes are refused above this `|A| + |R|`.
    pub exact_limit: usize,
    pub palette: Palette,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            instances: None,
            exact_limit: DEFAULT_EXACT_LIMIT,
            palette: Palette::default(),
        }
    }
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    code: &'static str,
    message: String,
}

pub struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl From<SolveError> for ApiError {
    fn from(e: SolveError) -> Self {
        let status = match e {
            SolveError::InvalidRequest(_) | SolveError::Parse(_) => StatusCode::BAD_REQUEST,
            SolveError::NotConflictFree(_)
            | SolveError::Infeasible(_)
            | SolveError::ExactTooLarge { .. } => StatusCode::UNPROCESSABLE_ENTITY,
            SolveError::NotFound(_) => StatusCode::NOT_FOUND,
            SolveError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError {
            status,
            body: ErrorBody {
                code: e.code(),
                message: e.to_string(),
            },
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        let status = r.status();
        let code = if status == StatusCode::PAYLOAD_TOO_LARGE {
            "PAYLOAD_TOO_LARGE"
        } else {
            "INVALID_REQUEST"
        };
        ApiError {
            status,
            body: ErrorBody {
                code,
                message: r.body_text(),
            },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

#[derive(Debug, Serialize)]
struct Health {
    status: &'static str,
    version: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceEntry {
    pub id: String,
    pub format: Format,
    pub bytes: u64,
}

#[derive(Debug, Serialize)]
struct InstanceText {
    id: String,
    format: Format,
    af: String,
    /// Content of `<stem>.ext` when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    extension: Option<String>,
}

/// Instance files of `dir`, sorted by name.
pub fn list_instances(dir: &Path) -> std::io::Result<Vec<InstanceEntry>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        let path = entry.path();
        let Some(format) = path
            .extension()
            .and_then(|e| e.to_str())
            .and_then(Format::from_extension)
        else {
            continue;
        };
        if !entry.file_type()?.is_file() {
            continue;
        }
        out.push(InstanceEntry {
            id: entry.file_name().to_string_lossy().into_owned(),
            format,
            bytes: entry.metadata()?.len(),
        });
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

fn instances_dir(config: &ServiceConfig) -> Result<&Path, ApiError> {
    config
        .instances
        .as_deref()
        .ok_or_else(|| SolveError::NotFound("no instance directory configured".into()).into())
}

fn io_error(e: std::io::Error) -> ApiError {
    SolveError::Internal(e.to_string()).into()
}

async fn health() -> Json<Health> {
    Json(Health {
        status: "ok",
        version: env!("CARGO_PKG_VERSION"),
    })
}

async fn instances(
    State(config): State<Arc<ServiceConfig>>,
) -> Result<Json<Vec<InstanceEntry>>, ApiError> {
    let dir = instances_dir(&config)?;
    Ok(Json(list_instances(dir).map_err(io_error)?))
}

async fn instance(
    State(config): State<Arc<ServiceConfig>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<InstanceText>, ApiError> {
    let dir = instances_dir(&config)?;
    // only names from the listing are served, which rules out path tricks
    let entry = list_instances(dir)
        .map_err(io_error)?
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| SolveError::NotFound(format!("instance `{id}`")))?;
    let path = dir.join(&entry.id);
    let af = std::fs::read_to_string(&path).map_err(io_error)?;
    let extension = std::fs::read_to_string(path.with_extension("ext")).ok();
    Ok(Json(InstanceText {
        id: entry.id,
        format: entry.format,
        af,
        extension,
    }))
}

async fn layout(
    State(config): State<Arc<ServiceConfig>>,
    body: Result<Json<SolveRequest>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(request) = body?;
    if request.mode != SolveMode::Heuristic {
        let af = crate::request::parse_framework(&request.af, request.format)?;
        if af.size() > config.exact_limit {
            return Err(SolveError::ExactTooLarge {
                size: af.size(),
                limit: config.exact_limit,
            }
            .into());
        }
    }
    let palette = config.palette.clone();
    let doc = tokio::task::spawn_blocking(move || solve(&request, &palette))
        .await
        .map_err(|e| SolveError::Internal(e.to_string()))??;
    Ok(Json(doc).into_response())
}

pub fn router(config: ServiceConfig) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/instances", get(instances))
        .route("/api/instances/{id}", get(instance))
        .route("/api/layout", post(layout))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .with_state(Arc::new(config))
}

pub async fn serve(addr: std::net::SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config)).await
}
