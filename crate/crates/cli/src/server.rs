//! JSON/HTTP service backing the explorer. Sessions live in memory; each
//! holds an initial seed, the current mutation history and a field.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use upcluster_core::{CoefficientSpec, ExchangeMatrix, Seed};

use crate::commands::{self, StateReport};
use crate::error::{CliError, CliResult, ErrorClass};
use crate::schema::{parse_field, to_zero_based, SeedJson};

struct Session {
    initial_matrix: ExchangeMatrix,
    initial: Seed,
    current: Seed,
    field: CoefficientSpec,
}

impl Session {
    fn state(&self, field: &CoefficientSpec) -> StateReport {
        commands::state(&self.initial_matrix, &self.current, field)
    }
}

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Arc<RwLock<Session>>>>>,
}

impl AppState {
    fn session(&self, id: &str) -> CliResult<Arc<RwLock<Session>>> {
        self.sessions
            .read()
            .expect("session table poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| CliError::UnknownSession(id.to_string()))
    }
}

/// A `CliError` rendered as `{"error", "message"}` with a matching status.
pub struct ApiError(CliError);

impl From<CliError> for ApiError {
    fn from(e: CliError) -> Self {
        ApiError(e)
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError(CliError::Input(e.body_text()))
    }
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match &self.0 {
            CliError::UnknownSession(_) => StatusCode::NOT_FOUND,
            e if e.is_invalid_index() => StatusCode::UNPROCESSABLE_ENTITY,
            e if e.class() == ErrorClass::Usage => StatusCode::BAD_REQUEST,
            _ => StatusCode::CONFLICT,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status(), Json(self.0.body())).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Serialize)]
pub struct SessionResponse {
    pub id: String,
    #[serde(flatten)]
    pub state: StateReport,
}

#[derive(Deserialize)]
pub struct FieldQuery {
    field: Option<String>,
}

impl FieldQuery {
    fn spec(&self) -> CliResult<Option<CoefficientSpec>> {
        self.field.as_deref().map(parse_field).transpose()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MutateRequest {
    k: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberRequest {
    element: String,
    #[serde(default)]
    path: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingRequest {
    var: usize,
    element: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRequest {
    element: String,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/session", post(create_session))
        .route("/api/session/:id", get(get_session))
        .route("/api/session/:id/mutate", post(mutate))
        .route("/api/session/:id/undo", post(undo))
        .route("/api/session/:id/query/member", post(query_member))
        .route("/api/session/:id/query/pairing", post(query_pairing))
        .route("/api/session/:id/query/local-factor", post(query_local_factor))
        .with_state(state)
}

fn respond(id: &str, session: &Session, field: &CoefficientSpec) -> Json<SessionResponse> {
    Json(SessionResponse {
        id: id.to_string(),
        state: session.state(field),
    })
}

async fn create_session(
    State(state): State<AppState>,
    Query(query): Query<FieldQuery>,
    body: Result<Json<SeedJson>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionResponse>), ApiError> {
    let Json(doc) = body?;
    let field = query.spec()?.unwrap_or(CoefficientSpec::Integers);
    let initial = doc.initial_seed()?;
    let current = initial.mutate_path(&doc.path()?).map_err(CliError::from)?;
    let session = Session {
        initial_matrix: doc.initial_matrix()?,
        initial,
        current,
        field,
    };
    let id = uuid::Uuid::new_v4().to_string();
    let response = respond(&id, &session, &session.field);
    state
        .sessions
        .write()
        .expect("session table poisoned")
        .insert(id, Arc::new(RwLock::new(session)));
    Ok((StatusCode::CREATED, response))
}

async fn get_session(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(query): Query<FieldQuery>,
) -> ApiResult<SessionResponse> {
    let session = state.session(&id)?;
    let session = session.read().expect("session poisoned");
    let field = query.spec()?.unwrap_or_else(|| session.field);
    Ok(respond(&id, &session, &field))
}

async fn mutate(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MutateRequest>, JsonRejection>,
) -> ApiResult<SessionResponse> {
    let session = state.session(&id)?;
    let Json(request) = body?;
    let mut session = session.write().expect("session poisoned");
    let k = to_zero_based(&[request.k])?[0];
    session.current = session.current.mutate(k).map_err(CliError::from)?;
    Ok(respond(&id, &session, &session.field))
}

async fn undo(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<SessionResponse> {
    let session = state.session(&id)?;
    let mut session = session.write().expect("session poisoned");
    let Some((_, earlier)) = session.current.history().split_last() else {
        return Err(CliError::EmptyHistory.into());
    };
    session.current = session.initial.mutate_path(earlier).map_err(CliError::from)?;
    Ok(respond(&id, &session, &session.field))
}

async fn query_member(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MemberRequest>, JsonRejection>,
) -> ApiResult<commands::MemberReport> {
    let session = state.session(&id)?;
    let Json(request) = body?;
    let session = session.read().expect("session poisoned");
    Ok(Json(commands::member(&session.current, &request.element, request.path.as_deref())?))
}

async fn query_pairing(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<PairingRequest>, JsonRejection>,
) -> ApiResult<commands::PairingReport> {
    let session = state.session(&id)?;
    let Json(request) = body?;
    let session = session.read().expect("session poisoned");
    Ok(Json(commands::pairing(&session.current, request.var, &request.element)?))
}

async fn query_local_factor(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<ElementRequest>, JsonRejection>,
) -> ApiResult<commands::LocalFactorReport> {
    let session = state.session(&id)?;
    let Json(request) = body?;
    let session = session.read().expect("session poisoned");
    Ok(Json(commands::local_factor(&session.current, &request.element)?))
}

/// Serves the API on `127.0.0.1:port` until the process is stopped.
pub async fn serve(port: u16) -> CliResult<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port))
        .await
        .map_err(|e| CliError::Io(format!("cannot bind port {port}: {e}")))?;
    eprintln!("listening on http://127.0.0.1:{port}");
    axum::serve(listener, router(AppState::default()))
        .await
        .map_err(|e| CliError::Io(e.to_string()))
}
