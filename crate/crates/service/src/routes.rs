use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tangle_core::session::UnknownRole;
use tangle_core::{Letter, Move, ProjRat, Role, SessionError, Snapshot};

use crate::store::{Store, StoreError};

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    NotFound(String),
    Conflict(String),
    Internal(String),
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::InverseMove(_) => ApiError::BadRequest(e.to_string()),
            SessionError::Corrupt(_) => ApiError::Internal(e.to_string()),
            _ => ApiError::Conflict(e.to_string()),
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        ApiError::Internal(e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::BadRequest(e.body_text())
    }
}

#[derive(Serialize)]
struct ErrorBody {
    error: String,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, error) = match self {
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, m),
            ApiError::NotFound(m) => (StatusCode::NOT_FOUND, m),
            ApiError::Conflict(m) => (StatusCode::CONFLICT, m),
            ApiError::Internal(m) => {
                tracing::error!(error = %m, "internal error");
                (StatusCode::INTERNAL_SERVER_ERROR, m)
            }
        };
        (status, Json(ErrorBody { error })).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;
type Shared = State<Arc<Store>>;

pub(crate) fn routes() -> Router<Arc<Store>> {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(snapshot))
        .route("/sessions/{id}/moves", post(perform))
        .route("/sessions/{id}/reveal", post(reveal))
        .route("/sessions/{id}/hint", get(hint))
}

#[derive(Deserialize)]
struct CreateBody {
    #[serde(default)]
    seed: u64,
    /// Start from a known invariant instead of the untangle.
    fraction: Option<String>,
    role: Option<String>,
}

#[derive(Deserialize)]
struct MoveBody {
    role: String,
    #[serde(rename = "move")]
    letter: String,
}

#[derive(Deserialize)]
struct RoleQuery {
    role: Option<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HintResponse {
    #[serde(rename = "move")]
    pub letter: Move,
}

fn parse_role(s: Option<&str>, default: Role) -> Result<Role, ApiError> {
    s.map_or(Ok(default), |s| s.parse().map_err(|e: UnknownRole| ApiError::BadRequest(e.to_string())))
}

/// Only the two physical moves travel over the wire.
fn parse_wire_move(s: &str) -> Result<Move, ApiError> {
    match s.parse::<Move>() {
        Ok(m) if !m.is_inverse() => Ok(m),
        _ => Err(ApiError::BadRequest(format!("malformed move {s:?}: expected \"T\" or \"R\""))),
    }
}

async fn lookup(store: &Store, id: &str) -> Result<Arc<tokio::sync::Mutex<tangle_core::TrickSession>>, ApiError> {
    store.get(id).await.ok_or_else(|| ApiError::NotFound(format!("no session {id:?}")))
}

async fn create(State(store): Shared, body: Result<Json<CreateBody>, JsonRejection>) -> ApiResult<Snapshot> {
    let Json(body) = body?;
    let role = parse_role(body.role.as_deref(), Role::Assistant)?;
    let start =
        body.fraction.map(|f| f.parse::<ProjRat>().map_err(|e| ApiError::BadRequest(e.to_string()))).transpose()?;
    let handle = store.create(body.seed, start).await;
    let snap = handle.lock().await.snapshot(role);
    store.save().await?;
    Ok(Json(snap))
}

async fn snapshot(State(store): Shared, Path(id): Path<String>, Query(q): Query<RoleQuery>) -> ApiResult<Snapshot> {
    let role = parse_role(q.role.as_deref(), Role::Audience)?;
    let handle = lookup(&store, &id).await?;
    let snap = handle.lock().await.snapshot(role);
    Ok(Json(snap))
}

async fn perform(
    State(store): Shared,
    Path(id): Path<String>,
    body: Result<Json<MoveBody>, JsonRejection>,
) -> ApiResult<Snapshot> {
    let Json(body) = body?;
    let role = parse_role(Some(&body.role), Role::Audience)?;
    let letter = parse_wire_move(&body.letter)?;
    let handle = lookup(&store, &id).await?;
    let snap = {
        let mut session = handle.lock().await;
        session.perform(role, letter)?;
        session.snapshot(role)
    };
    store.save().await?;
    Ok(Json(snap))
}

async fn reveal(State(store): Shared, Path(id): Path<String>) -> ApiResult<Snapshot> {
    let handle = lookup(&store, &id).await?;
    let snap = {
        let mut session = handle.lock().await;
        session.reveal()?;
        session.snapshot(Role::Assistant)
    };
    store.save().await?;
    Ok(Json(snap))
}

async fn hint(State(store): Shared, Path(id): Path<String>) -> ApiResult<HintResponse> {
    let handle = lookup(&store, &id).await?;
    let letter = handle.lock().await.hint()?;
    Ok(Json(HintResponse { letter }))
}
