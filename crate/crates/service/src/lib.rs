//! Simulation service: JSON requests on `POST /api`, snapshot deltas as
//! server-sent events on `GET /events?session=<id>`.
//!
//! Every request names an operation, an optional session id and a payload;
//! see `docs/sim-protocol.md` for the schema.

use std::collections::BTreeMap;
use std::convert::Infallible;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use amda_core::expr::pretty;
use amda_core::ir::{FlatNetwork, StateKind};
use amda_core::pim::{read_dispatcher, read_pim, DispatcherDoc};
use amda_core::sim::{
    default_dispatcher, parse_script, InstanceView, PossibleEvent, SimSession, Snapshot,
    StubBindings, TraceEntry,
};
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::sse::{Event, KeepAlive, Sse};
use axum::response::{IntoResponse, Response as HttpResponse};
use axum::routing::{get, post};
use axum::{Json, Router};
use futures::Stream;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as JsonValue};
use thiserror::Error;
use tokio::net::TcpListener;
use tokio::sync::{broadcast, Mutex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{code}: {message}")]
pub struct ServiceError {
    pub code: String,
    pub message: String,
}

impl ServiceError {
    fn new(code: impl Into<String>, message: impl Into<String>) -> Self {
        ServiceError {
            code: code.into(),
            message: message.into(),
        }
    }
}

impl From<amda_core::sim::SimError> for ServiceError {
    fn from(e: amda_core::sim::SimError) -> Self {
        ServiceError::new(e.code(), e.to_string())
    }
}

impl From<amda_core::pim::PimError> for ServiceError {
    fn from(e: amda_core::pim::PimError) -> Self {
        ServiceError::new(e.code(), e.to_string())
    }
}

/// A network the service can start sessions of.
#[derive(Debug, Clone)]
pub struct Model {
    pub name: String,
    pub net: FlatNetwork,
    pub disp: DispatcherDoc,
    pub stubs: StubBindings,
}

#[derive(Debug, Deserialize)]
pub struct Request {
    #[serde(default)]
    pub id: JsonValue,
    pub op: String,
    #[serde(default)]
    pub session: Option<String>,
    #[serde(default)]
    pub payload: JsonValue,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Response {
    pub id: JsonValue,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub session: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<JsonValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

/// What changed in one injection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Delta {
    pub session: String,
    pub step: u64,
    pub quiescent: bool,
    pub changed: Vec<InstanceView>,
    pub possible_events: Vec<PossibleEvent>,
    pub recent: Vec<TraceEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateView {
    pub id: String,
    pub name: String,
    pub kind: StateKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransitionView {
    pub source: String,
    pub destination: String,
    pub event: Option<String>,
    pub guard: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutomatonView {
    pub id: String,
    pub states: Vec<StateView>,
    pub transitions: Vec<TransitionView>,
}

/// State graphs for client-side rendering.
pub fn graph(net: &FlatNetwork) -> Vec<AutomatonView> {
    net.automata
        .iter()
        .map(|a| AutomatonView {
            id: a.id.clone(),
            states: a
                .states
                .iter()
                .map(|s| StateView {
                    id: s.id.clone(),
                    name: s.name.clone(),
                    kind: s.kind,
                })
                .collect(),
            transitions: a
                .transitions
                .iter()
                .map(|t| TransitionView {
                    source: t.source.clone(),
                    destination: t.destination.clone(),
                    event: t.event.clone(),
                    guard: t
                        .guard
                        .as_deref()
                        .map(|g| a.condition(g).map_or(g.to_string(), |c| pretty(&c.expr))),
                })
                .collect(),
        })
        .collect()
}

struct Live {
    sim: SimSession,
    model: String,
    tx: broadcast::Sender<Delta>,
}

struct Inner {
    models: BTreeMap<String, Model>,
    sessions: std::sync::Mutex<BTreeMap<String, Arc<Mutex<Live>>>>,
    next: AtomicU64,
    max_steps: Option<u64>,
}

#[derive(Clone)]
pub struct AppState(Arc<Inner>);

impl AppState {
    /// `max_steps` overrides the step budget of new sessions; without it
    /// `AMDA_MAX_STEPS` or the default applies.
    pub fn new(models: impl IntoIterator<Item = Model>, max_steps: Option<u64>) -> Self {
        AppState(Arc::new(Inner {
            models: models.into_iter().map(|m| (m.name.clone(), m)).collect(),
            sessions: Default::default(),
            next: AtomicU64::new(1),
            max_steps,
        }))
    }

    fn session(&self, id: Option<&str>) -> Result<(String, Arc<Mutex<Live>>), ServiceError> {
        let id = id.ok_or_else(|| ServiceError::new("bad-request", "operation needs a session"))?;
        let sessions = self.0.sessions.lock().expect("session table");
        sessions
            .get(id)
            .cloned()
            .map(|s| (id.to_string(), s))
            .ok_or_else(|| ServiceError::new("unknown-session", format!("no session `{id}`")))
    }

    async fn dispatch(&self, req: &Request) -> Result<(Option<String>, JsonValue), ServiceError> {
        match req.op.as_str() {
            "models" => {
                let models: Vec<JsonValue> = self
                    .0
                    .models
                    .values()
                    .map(|m| {
                        json!({
                            "name": m.name,
                            "instances": m.disp.instances.iter().map(|i| &i.id).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                Ok((None, json!({ "models": models })))
            }
            "instantiate" => self.instantiate(&req.payload).map(|(s, r)| (Some(s), r)),
            "inject_event" => {
                let (id, live) = self.session(req.session.as_deref())?;
                let field = |k: &str| {
                    req.payload
                        .get(k)
                        .and_then(JsonValue::as_str)
                        .map(str::to_string)
                        .ok_or_else(|| {
                            ServiceError::new("bad-request", format!("payload needs `{k}`"))
                        })
                };
                let (instance, event) = (field("instance")?, field("event")?);
                let mut live = live.lock().await;
                let before = live.sim.snapshot();
                live.sim.inject_event(&instance, &event)?;
                let after = live.sim.snapshot();
                let delta = delta(&id, &before, after);
                // Nobody listening is fine.
                let _ = live.tx.send(delta.clone());
                Ok((Some(id), to_json(&delta)))
            }
            "snapshot" => {
                let (id, live) = self.session(req.session.as_deref())?;
                let live = live.lock().await;
                Ok((Some(id), to_json(&live.sim.snapshot())))
            }
            "trace" => {
                let (id, live) = self.session(req.session.as_deref())?;
                let since = req
                    .payload
                    .get("since")
                    .and_then(JsonValue::as_u64)
                    .unwrap_or(0) as usize;
                let live = live.lock().await;
                let trace = live.sim.trace();
                let entries = &trace[since.min(trace.len())..];
                Ok((Some(id), json!({ "entries": entries, "next": trace.len() })))
            }
            "close" => {
                let (id, _) = self.session(req.session.as_deref())?;
                self.0.sessions.lock().expect("session table").remove(&id);
                Ok((Some(id), json!({})))
            }
            other => Err(ServiceError::new(
                "unknown-op",
                format!("unknown operation `{other}`"),
            )),
        }
    }

    fn instantiate(&self, payload: &JsonValue) -> Result<(String, JsonValue), ServiceError> {
        let text = |k: &str| payload.get(k).and_then(JsonValue::as_str);
        let (name, net, disp, mut stubs) = match (text("model"), text("pim")) {
            (Some(name), _) => {
                let m = self.0.models.get(name).ok_or_else(|| {
                    ServiceError::new("unknown-model", format!("no model `{name}`"))
                })?;
                (
                    m.name.clone(),
                    m.net.clone(),
                    m.disp.clone(),
                    m.stubs.clone(),
                )
            }
            (None, Some(pim)) => {
                let net = read_pim(pim)?;
                let disp = match text("dispatcher") {
                    Some(d) => read_dispatcher(d)?,
                    None => default_dispatcher(&net),
                };
                ("inline".to_string(), net, disp, StubBindings::default())
            }
            (None, None) => {
                return Err(ServiceError::new(
                    "bad-request",
                    "payload needs `model` or `pim`",
                ))
            }
        };
        let mut inputs = Vec::new();
        if let Some(script) = text("script") {
            let s = parse_script(script)?;
            stubs.functions.extend(s.stubs.functions);
            inputs = s.inputs;
        }
        let mut sim = SimSession::instantiate(net, disp, stubs)?;
        if let Some(n) = self.0.max_steps {
            sim.set_max_steps(n);
        }
        for (io, v) in inputs {
            sim.push_input(io, v);
        }
        sim.run_to_quiescence()?;
        let id = format!("s{}", self.0.next.fetch_add(1, Ordering::Relaxed));
        let result = json!({
            "model": name,
            "graph": graph(sim.network()),
            "snapshot": sim.snapshot(),
        });
        let (tx, _) = broadcast::channel(64);
        self.0.sessions.lock().expect("session table").insert(
            id.clone(),
            Arc::new(Mutex::new(Live {
                sim,
                model: name,
                tx,
            })),
        );
        Ok((id, result))
    }
}

fn to_json<T: Serialize>(v: &T) -> JsonValue {
    serde_json::to_value(v).expect("plain data serializes")
}

fn delta(session: &str, before: &Snapshot, after: Snapshot) -> Delta {
    let changed = after
        .instances
        .iter()
        .filter(|v| !before.instances.contains(v))
        .cloned()
        .collect();
    Delta {
        session: session.to_string(),
        step: after.step,
        quiescent: after.quiescent,
        changed,
        possible_events: after.possible_events,
        recent: after.recent,
    }
}

/// Runs one request against the state; used by the HTTP handler and
/// directly by tests.
pub async fn handle(state: &AppState, req: Request) -> Response {
    match state.dispatch(&req).await {
        Ok((session, result)) => Response {
            id: req.id,
            ok: true,
            session,
            result: Some(result),
            error: None,
        },
        Err(e) => Response {
            id: req.id,
            ok: false,
            session: req.session,
            result: None,
            error: Some(ErrorBody {
                code: e.code,
                message: e.message,
            }),
        },
    }
}

async fn api(State(state): State<AppState>, Json(req): Json<Request>) -> Json<Response> {
    Json(handle(&state, req).await)
}

#[derive(Deserialize)]
struct EventsQuery {
    session: String,
}

async fn events(
    State(state): State<AppState>,
    Query(q): Query<EventsQuery>,
) -> Result<Sse<impl Stream<Item = Result<Event, Infallible>>>, HttpResponse> {
    let (id, live) = state.session(Some(&q.session)).map_err(|e| {
        (
            StatusCode::NOT_FOUND,
            Json(json!({ "code": e.code, "message": e.message })),
        )
            .into_response()
    })?;
    let (first, rx) = {
        let live = live.lock().await;
        let first = json!({ "session": id, "model": live.model, "snapshot": live.sim.snapshot() });
        (first, live.tx.subscribe())
    };
    let head = futures::stream::once(async move {
        Ok(Event::default().event("snapshot").data(first.to_string()))
    });
    let tail = futures::stream::unfold(rx, |mut rx| async move {
        loop {
            match rx.recv().await {
                Ok(d) => {
                    let ev = Event::default()
                        .event("delta")
                        .data(to_json(&d).to_string());
                    return Some((Ok(ev), rx));
                }
                Err(broadcast::error::RecvError::Lagged(_)) => continue,
                Err(broadcast::error::RecvError::Closed) => return None,
            }
        }
    });
    Ok(Sse::new(futures::StreamExt::chain(head, tail)).keep_alive(KeepAlive::default()))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api", post(api))
        .route("/events", get(events))
        .with_state(state)
}

pub async fn serve(listener: TcpListener, state: AppState) -> std::io::Result<()> {
    axum::serve(listener, router(state)).await
}
