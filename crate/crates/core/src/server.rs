//! Session-based HTTP API for the browser explorer.
//!
//! | method | path | body |
//! |---|---|---|
//! | POST | `/api/sessions` | `{"source": {"torus": 3}}`, `{"source": {"cycle": 4}}` or `{"source": {"document": {...}}}`, optional `"strict"` |
//! | GET | `/api/sessions/{id}` | |
//! | POST | `/api/sessions/{id}/mutate` | `{"vertex": 5}` or `{"vertex": "f_3"}` |
//! | POST | `/api/sessions/{id}/undo` | |
//! | POST | `/api/sessions/{id}/apply` | `{"name": "theorem" \| "cycle-lemma" \| "sigma" \| "tau", "args": [i]}` |
//! | PUT | `/api/sessions/{id}/mode` | `{"strict": false}` |
//! | GET | `/api/meta/sequences?n=N` | |
//!
//! Sessions keep only the origin quiver and the list of mutated vertices;
//! the current quiver is always the replay of that history.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{Duration, Instant};

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use crate::engine::{apply_sequence, Mode, TraceStepDocument};
use crate::error::{EngineError, FamilyError, FormatError, QuiverError};
use crate::family::{CycleFamily, MutationSequence, TorusFamily};
use crate::format::QuiverDocument;
use crate::labels::LabelMap;
use crate::quiver::{IceQuiver, VertexColor};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceSpec {
    Torus(usize),
    Cycle(usize),
    Document(QuiverDocument),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SessionSource {
    Torus(TorusFamily),
    Cycle(CycleFamily),
    Upload,
}

impl SessionSource {
    fn kind(&self) -> &'static str {
        match self {
            SessionSource::Torus(_) => "torus",
            SessionSource::Cycle(_) => "cycle",
            SessionSource::Upload => "document",
        }
    }

    fn n(&self) -> Option<usize> {
        match self {
            SessionSource::Torus(t) => Some(t.n()),
            SessionSource::Cycle(c) => Some(c.n()),
            SessionSource::Upload => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SessionError {
    NotFound(String),
    BadRequest(String),
    NotGreen { step: usize, vertex: usize },
}

impl SessionError {
    fn status(&self) -> StatusCode {
        match self {
            SessionError::NotFound(_) => StatusCode::NOT_FOUND,
            SessionError::BadRequest(_) => StatusCode::BAD_REQUEST,
            SessionError::NotGreen { .. } => StatusCode::CONFLICT,
        }
    }

    fn body(&self) -> Value {
        match self {
            SessionError::NotFound(id) => json!({"error": "not-found", "message": format!("no session {id}")}),
            SessionError::BadRequest(msg) => json!({"error": "bad-request", "message": msg}),
            SessionError::NotGreen { step, vertex } => json!({
                "error": "not-green",
                "message": format!("vertex {vertex} is red; strict mode only mutates green vertices"),
                "step": step,
                "vertex": vertex,
            }),
        }
    }
}

impl IntoResponse for SessionError {
    fn into_response(self) -> Response {
        (self.status(), Json(self.body())).into_response()
    }
}

impl From<FamilyError> for SessionError {
    fn from(e: FamilyError) -> Self {
        SessionError::BadRequest(e.to_string())
    }
}

impl From<FormatError> for SessionError {
    fn from(e: FormatError) -> Self {
        SessionError::BadRequest(e.to_string())
    }
}

impl From<QuiverError> for SessionError {
    fn from(e: QuiverError) -> Self {
        SessionError::BadRequest(e.to_string())
    }
}

impl From<EngineError> for SessionError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::NotGreenAtStep { step, vertex } => SessionError::NotGreen { step, vertex },
            other => SessionError::BadRequest(other.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    pub source: SessionSource,
    pub origin: IceQuiver,
    pub current: IceQuiver,
    pub labels: Option<LabelMap>,
    pub history: Vec<usize>,
    pub strict: bool,
    last_access: Instant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexView {
    pub index: usize,
    pub label: String,
    /// `green`, `red`, `frozen` or `mixed`.
    pub color: String,
    pub frozen: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateView {
    pub id: String,
    pub source: String,
    pub n: Option<usize>,
    pub strict: bool,
    pub vertices: Vec<VertexView>,
    pub arrows: Vec<[u32; 3]>,
    pub history: Vec<usize>,
    pub colors: String,
}

impl Session {
    pub fn create(id: String, spec: SourceSpec, strict: bool) -> Result<Self, SessionError> {
        let (source, origin, labels) = match spec {
            SourceSpec::Torus(n) => {
                let t = TorusFamily::new(n)?;
                (SessionSource::Torus(t), t.quiver(), Some(t.label_map()))
            }
            SourceSpec::Cycle(n) => {
                let c = CycleFamily::new(n)?;
                (SessionSource::Cycle(c), c.quiver(), Some(c.label_map()))
            }
            SourceSpec::Document(doc) => {
                let (q, labels) = doc.to_quiver()?;
                (SessionSource::Upload, q, labels)
            }
        };
        Ok(Self {
            id,
            source,
            current: origin.clone(),
            origin,
            labels,
            history: Vec::new(),
            strict,
            last_access: Instant::now(),
        })
    }

    fn mode(&self) -> Mode {
        if self.strict {
            Mode::StrictGreen
        } else {
            Mode::Unrestricted
        }
    }

    pub fn resolve(&self, v: &VertexRef) -> Result<usize, SessionError> {
        let index = match v {
            VertexRef::Index(i) => *i,
            VertexRef::Label(s) => crate::labels::resolve_vertex(s, self.labels.as_ref())?,
        };
        if index >= self.current.dim() {
            return Err(QuiverError::IndexOutOfRange {
                index,
                size: self.current.dim(),
            }
            .into());
        }
        Ok(index)
    }

    pub fn mutate_step(&mut self, vertex: usize) -> Result<(), SessionError> {
        if self.strict && !self.current.vertex_color(vertex)?.is_green() {
            return Err(SessionError::NotGreen {
                step: self.history.len() + 1,
                vertex,
            });
        }
        self.current = self.current.mutate(vertex)?;
        self.history.push(vertex);
        Ok(())
    }

    /// Drops the last history entry and replays from the origin. Returns
    /// false when there was nothing to undo.
    pub fn undo(&mut self) -> Result<bool, SessionError> {
        if self.history.pop().is_none() {
            return Ok(false);
        }
        self.current = self.origin.mutate_along(&self.history)?;
        Ok(true)
    }

    pub fn named_sequence(&self, name: &str, args: &[usize]) -> Result<MutationSequence, SessionError> {
        let mismatch = || {
            SessionError::BadRequest(format!(
                "sequence {name:?} is not defined for a {} session",
                self.source.kind()
            ))
        };
        let block = || {
            args.first()
                .copied()
                .ok_or_else(|| SessionError::BadRequest(format!("{name} needs a block argument")))
        };
        match (name, self.source) {
            ("theorem", SessionSource::Torus(t)) => Ok(t.theorem_sequence()),
            ("sigma", SessionSource::Torus(t)) => Ok(t.sigma(block()?)?),
            ("tau", SessionSource::Torus(t)) => Ok(t.tau(block()?)?),
            ("cycle-lemma", SessionSource::Torus(t)) => Ok(t.cycle_sequence()),
            ("cycle-lemma", SessionSource::Cycle(c)) => Ok(c.cycle_sequence()),
            ("theorem" | "sigma" | "tau" | "cycle-lemma", _) => Err(mismatch()),
            _ => Err(SessionError::BadRequest(format!("unknown sequence {name:?}"))),
        }
    }

    /// Applies a whole named sequence from the current state. Nothing is
    /// committed if any step is rejected.
    pub fn apply_named(&mut self, name: &str, args: &[usize]) -> Result<Vec<TraceStepDocument>, SessionError> {
        let seq = self.named_sequence(name, args)?;
        let trace = apply_sequence(&self.current, seq.steps(), self.mode(), false).map_err(|e| match e {
            EngineError::NotGreenAtStep { step, vertex } => SessionError::NotGreen {
                step: self.history.len() + step,
                vertex,
            },
            other => other.into(),
        })?;
        self.current = trace.final_quiver();
        self.history.extend_from_slice(seq.steps());
        Ok(trace.to_document(self.labels.as_ref()).steps)
    }

    pub fn state(&self) -> StateView {
        let q = &self.current;
        let vertices = (0..q.dim())
            .map(|v| {
                let color = if q.is_frozen(v) {
                    "frozen".to_string()
                } else {
                    match q.vertex_color(v) {
                        Ok(c) => c.to_string(),
                        Err(_) => "mixed".to_string(),
                    }
                };
                VertexView {
                    index: v,
                    label: self
                        .labels
                        .as_ref()
                        .and_then(|l| l.name(v))
                        .map(str::to_string)
                        .unwrap_or_else(|| v.to_string()),
                    color,
                    frozen: q.is_frozen(v),
                }
            })
            .collect();
        let colors = (0..q.n_mutable())
            .map(|v| q.vertex_color(v).map(VertexColor::as_char).unwrap_or('?'))
            .collect();
        StateView {
            id: self.id.clone(),
            source: self.source.kind().to_string(),
            n: self.source.n(),
            strict: self.strict,
            vertices,
            arrows: QuiverDocument::from_quiver(q, None).arrows,
            history: self.history.clone(),
            colors,
        }
    }
}

/// In-memory session store with idle eviction.
pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    idle_ttl: Duration,
    static_dir: Option<PathBuf>,
}

impl AppState {
    pub fn new(idle_ttl: Duration, static_dir: Option<PathBuf>) -> Arc<Self> {
        Arc::new(Self {
            sessions: RwLock::new(HashMap::new()),
            idle_ttl,
            static_dir,
        })
    }

    pub fn create(&self, spec: SourceSpec, strict: bool) -> Result<StateView, SessionError> {
        self.evict_idle();
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session::create(id.clone(), spec, strict)?;
        let view = session.state();
        self.sessions
            .write()
            .expect("session map lock")
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    }

    /// Runs `f` with exclusive access to one session.
    pub fn with_session<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut Session) -> Result<T, SessionError>,
    ) -> Result<T, SessionError> {
        let handle = self
            .sessions
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(id.to_string()))?;
        let mut session = handle.lock().expect("session lock");
        session.last_access = Instant::now();
        f(&mut session)
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session map lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn evict_idle(&self) {
        let ttl = self.idle_ttl;
        self.sessions.write().expect("session map lock").retain(|_, s| {
            s.try_lock()
                .map(|s| s.last_access.elapsed() < ttl)
                .unwrap_or(true)
        });
    }
}

#[derive(Debug, Deserialize)]
struct CreateBody {
    source: SourceSpec,
    #[serde(default = "default_strict")]
    strict: bool,
}

fn default_strict() -> bool {
    true
}

#[derive(Debug, Deserialize)]
struct MutateBody {
    vertex: VertexRef,
}

#[derive(Debug, Deserialize)]
struct ApplyBody {
    name: String,
    #[serde(default)]
    args: Vec<usize>,
}

#[derive(Debug, Deserialize)]
struct ModeBody {
    strict: bool,
}

#[derive(Debug, Deserialize)]
struct MetaQuery {
    n: usize,
}

type Shared = Arc<AppState>;

async fn create_session(
    State(app): State<Shared>,
    body: Result<Json<CreateBody>, axum::extract::rejection::JsonRejection>,
) -> Result<(StatusCode, Json<StateView>), SessionError> {
    let Json(body) = body.map_err(|e| SessionError::BadRequest(e.body_text()))?;
    let view = app.create(body.source, body.strict)?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_state(State(app): State<Shared>, Path(id): Path<String>) -> Result<Json<StateView>, SessionError> {
    app.with_session(&id, |s| Ok(Json(s.state())))
}

async fn mutate(
    State(app): State<Shared>,
    Path(id): Path<String>,
    body: Result<Json<MutateBody>, axum::extract::rejection::JsonRejection>,
) -> Result<Json<StateView>, SessionError> {
    let Json(body) = body.map_err(|e| SessionError::BadRequest(e.body_text()))?;
    app.with_session(&id, |s| {
        let v = s.resolve(&body.vertex)?;
        s.mutate_step(v)?;
        Ok(Json(s.state()))
    })
}

async fn undo(State(app): State<Shared>, Path(id): Path<String>) -> Result<Json<Value>, SessionError> {
    app.with_session(&id, |s| {
        let undone = s.undo()?;
        Ok(Json(json!({"undone": undone, "state": s.state()})))
    })
}

async fn apply(
    State(app): State<Shared>,
    Path(id): Path<String>,
    body: Result<Json<ApplyBody>, axum::extract::rejection::JsonRejection>,
) -> Result<Json<Value>, SessionError> {
    let Json(body) = body.map_err(|e| SessionError::BadRequest(e.body_text()))?;
    app.with_session(&id, |s| {
        let trace = s.apply_named(&body.name, &body.args)?;
        Ok(Json(json!({"steps": trace.len(), "trace": trace, "state": s.state()})))
    })
}

async fn set_mode(
    State(app): State<Shared>,
    Path(id): Path<String>,
    body: Result<Json<ModeBody>, axum::extract::rejection::JsonRejection>,
) -> Result<Json<StateView>, SessionError> {
    let Json(body) = body.map_err(|e| SessionError::BadRequest(e.body_text()))?;
    app.with_session(&id, |s| {
        s.strict = body.strict;
        Ok(Json(s.state()))
    })
}

async fn meta_sequences(
    query: Result<Query<MetaQuery>, axum::extract::rejection::QueryRejection>,
) -> Result<Json<Value>, SessionError> {
    let Query(MetaQuery { n }) = query.map_err(|e| SessionError::BadRequest(e.body_text()))?;
    let t = TorusFamily::new(n)?;
    let labels = t.label_map();
    let entry = |name: &str, args: Vec<usize>, seq: &MutationSequence| {
        json!({"name": name, "args": args, "length": seq.len(), "steps": seq.labels(&labels)})
    };
    let mut out = vec![
        entry("theorem", vec![], &t.theorem_sequence()),
        entry("cycle-lemma", vec![], &t.cycle_sequence()),
    ];
    for i in 1..=n {
        out.push(entry("sigma", vec![i], &t.sigma(i)?));
    }
    for i in 1..=n {
        out.push(entry("tau", vec![i], &t.tau(i)?));
    }
    Ok(Json(json!({"n": n, "sequences": out})))
}

async fn index_page() -> Html<&'static str> {
    Html(concat!(
        "<!doctype html><html><head><meta charset=\"utf-8\"><title>mgs explorer</title></head>",
        "<body><h1>mgs explorer API</h1><p>No UI bundle is configured. ",
        "Start the server with <code>--static-dir</code> pointing at the built explorer, ",
        "or use the JSON API under <code>/api</code>.</p></body></html>"
    ))
}

pub fn router(app: Shared) -> Router {
    let api = Router::new()
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_state))
        .route("/api/sessions/{id}/mutate", post(mutate))
        .route("/api/sessions/{id}/undo", post(undo))
        .route("/api/sessions/{id}/apply", post(apply))
        .route("/api/sessions/{id}/mode", put(set_mode))
        .route("/api/meta/sequences", get(meta_sequences));
    let api = match &app.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(index_page)),
    };
    api.with_state(app)
}

/// Binds `addr` and serves until the process ends. `on_bound` receives the
/// actual address (useful with port 0).
pub async fn serve(
    addr: SocketAddr,
    app: Shared,
    on_bound: impl FnOnce(SocketAddr),
) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    on_bound(listener.local_addr()?);
    axum::serve(listener, router(app)).await
}

/// The colors of a state view parsed back into vertex colors.
pub fn view_colors(view: &StateView) -> Option<Vec<VertexColor>> {
    crate::quiver::parse_color_string(&view.colors)
}
