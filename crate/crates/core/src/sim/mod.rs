//! Direct execution of a flat network: run-to-completion steps, one FIFO
//! event queue shared by all instances, scripted stubs for external
//! functions and a virtual console for io actions.

mod script;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{eval_expr, pretty_stmt, EvalError, GenericType, Stmt, Value};
use crate::ir::{
    validate_network, ActionRef, Diagnostic, FlatNetwork, FuncBody, IoDirection, Ssa, Transition,
};
use crate::pim::{DispatcherDoc, Instance as DispInstance};

pub use script::{parse_script, EventScript, ScriptEvent};

pub const DEFAULT_MAX_STEPS: u64 = 10_000;

/// Step budget from `AMDA_MAX_STEPS`, or the default.
pub fn max_steps_from_env() -> u64 {
    std::env::var("AMDA_MAX_STEPS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|n| *n > 0)
        .unwrap_or(DEFAULT_MAX_STEPS)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("external function `{0}` has no stub binding")]
    MissingStub(String),
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("instance `{instance}` does not receive event `{event}`")]
    UnknownEvent { instance: String, event: String },
    #[error("step budget of {0} exceeded (suspected livelock)")]
    StepBudgetExceeded(u64),
    #[error("instance `{instance}` in `{state}`: several transitions enabled: {}", transitions.join("; "))]
    GuardConflict {
        instance: String,
        state: String,
        transitions: Vec<String>,
    },
    #[error("instance `{instance}`: {source}")]
    Eval {
        instance: String,
        #[source]
        source: EvalError,
    },
    #[error("instance `{instance}`: guard `{guard}` is not a flag")]
    NonFlagGuard { instance: String, guard: String },
    #[error("instance `{instance}`: {message}")]
    Runtime { instance: String, message: String },
    #[error("io `{0}` has no scripted input left")]
    MissingInput(String),
    #[error("model is invalid: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidModel(Vec<Diagnostic>),
    #[error("line {line}: {message}")]
    Script { line: usize, message: String },
}

impl SimError {
    pub fn code(&self) -> &'static str {
        match self {
            SimError::MissingStub(_) => "missing-stub",
            SimError::UnknownInstance(_) => "unknown-instance",
            SimError::UnknownEvent { .. } => "unknown-event",
            SimError::StepBudgetExceeded(_) => "step-budget-exceeded",
            SimError::GuardConflict { .. } => "guard-conflict",
            SimError::Eval { source, .. } => source.code(),
            SimError::NonFlagGuard { .. } => "type-mismatch",
            SimError::Runtime { .. } => "runtime-error",
            SimError::MissingInput(_) => "missing-input",
            SimError::InvalidModel(_) => "invalid-model",
            SimError::Script { .. } => "script-syntax",
        }
    }
}

/// Scripted behaviour of external functions, keyed by function id or
/// declared name. Invocation `n` runs entry `n`; the last entry repeats.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StubBindings {
    pub functions: BTreeMap<String, Vec<Vec<Stmt>>>,
}

impl StubBindings {
    pub fn bind(&mut self, function: impl Into<String>, invocation: Vec<Stmt>) {
        self.functions
            .entry(function.into())
            .or_default()
            .push(invocation);
    }

    fn lookup(&self, id: &str, name: Option<&str>) -> Option<&Vec<Vec<Stmt>>> {
        self.functions
            .get(id)
            .or_else(|| name.and_then(|n| self.functions.get(n)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceKind {
    Transition,
    EntryAction,
    SendEvent,
    Io,
    EventDropped,
    Conflict,
}

impl TraceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceKind::Transition => "transition",
            TraceKind::EntryAction => "entry_action",
            TraceKind::SendEvent => "send_event",
            TraceKind::Io => "io",
            TraceKind::EventDropped => "event_dropped",
            TraceKind::Conflict => "conflict",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub step: u64,
    pub instance: String,
    pub kind: TraceKind,
    pub detail: String,
}

/// `step instance kind detail`, one record per line.
impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.step,
            self.instance,
            self.kind.as_str(),
            self.detail
        )
    }
}

pub fn format_trace(entries: &[TraceEntry]) -> String {
    entries.iter().map(|e| format!("{e}\n")).collect()
}

/// One running automaton. Objects named in the dispatcher own a root
/// instance; each sub-automaton gets an instance named `<parent>/<id>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    pub automaton: usize,
    pub parent: Option<usize>,
    pub state: String,
    pub memory: BTreeMap<String, Value>,
    pub active_child: Option<usize>,
    children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceView {
    pub name: String,
    pub automaton: String,
    pub state: String,
    pub state_name: String,
    pub active: bool,
    pub variables: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PossibleEvent {
    /// Object to inject into.
    pub instance: String,
    pub event: String,
    pub description: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub step: u64,
    pub quiescent: bool,
    pub instances: Vec<InstanceView>,
    pub possible_events: Vec<PossibleEvent>,
    /// Trace entries produced by the latest run.
    pub recent: Vec<TraceEntry>,
}

#[derive(Debug, Clone, PartialEq)]
struct Pending {
    target: usize,
    event: String,
}

const MAX_CALL_DEPTH: usize = 64;

#[derive(Debug, Clone)]
pub struct SimSession {
    net: Arc<FlatNetwork>,
    disp: DispatcherDoc,
    stubs: StubBindings,
    instances: Vec<Instance>,
    queue: VecDeque<Pending>,
    trace: Vec<TraceEntry>,
    step: u64,
    max_steps: u64,
    inputs: BTreeMap<String, VecDeque<Value>>,
    invocations: BTreeMap<(usize, String), usize>,
    dummy_events: BTreeSet<String>,
    mark: usize,
}

/// One instance per root automaton, named by its id.
pub fn default_dispatcher(net: &FlatNetwork) -> DispatcherDoc {
    DispatcherDoc {
        application: None,
        instances: net
            .roots()
            .into_iter()
            .map(|i| DispInstance {
                id: net.automata[i].id.clone(),
                phsa: net.automata[i].id.clone(),
            })
            .collect(),
        routes: Vec::new(),
    }
}

fn coerce(ty: GenericType, v: Value) -> Result<Value, EvalError> {
    match (ty, v) {
        (GenericType::Real, Value::Integer(i)) => Ok(Value::Real(i as f64)),
        (ty, v) if v.generic_type() == ty => Ok(v),
        (ty, v) => Err(EvalError::TypeMismatch {
            expected: ty.as_str().to_string(),
            found: v.generic_type(),
        }),
    }
}

fn initial_memory(ssa: &Ssa) -> Result<BTreeMap<String, Value>, EvalError> {
    let mut mem = BTreeMap::new();
    for v in &ssa.memory.variables {
        let value = match &v.init {
            Some(e) => coerce(v.ty, eval_expr(e, &mem)?)?,
            None => Value::default_for(v.ty),
        };
        mem.insert(v.name.clone(), value);
    }
    Ok(mem)
}

fn label(from: &str, t: &Transition) -> String {
    let mut s = format!("{from} -> {}", t.destination);
    if let Some(e) = &t.event {
        s.push_str(&format!(" on {e}"));
    }
    if let Some(g) = &t.guard {
        s.push_str(&format!(" [{g}]"));
    }
    s
}

impl SimSession {
    /// Creates every instance in its initial state with initialized memory.
    /// Nothing fires until the first run.
    pub fn instantiate(
        net: FlatNetwork,
        disp: DispatcherDoc,
        stubs: StubBindings,
    ) -> Result<SimSession, SimError> {
        let mut diags: Vec<Diagnostic> = validate_network(&net);
        diags.extend(disp.validate(&net));
        diags.retain(|d| !d.code.is_warning());
        if !diags.is_empty() {
            return Err(SimError::InvalidModel(diags));
        }
        let mut session = SimSession {
            dummy_events: net
                .activation_edges
                .iter()
                .map(|e| e.dummy_event.clone())
                .collect(),
            net: Arc::new(net),
            disp,
            stubs,
            instances: Vec::new(),
            queue: VecDeque::new(),
            trace: Vec::new(),
            step: 0,
            max_steps: max_steps_from_env(),
            inputs: BTreeMap::new(),
            invocations: BTreeMap::new(),
            mark: 0,
        };
        let roots: Vec<(String, usize)> = session
            .disp
            .instances
            .iter()
            .map(|i| {
                let index = session.net.index_of(&i.phsa).expect("validated dispatcher");
                (i.id.clone(), index)
            })
            .collect();
        for (name, automaton) in roots {
            session.add_instance(name, automaton, None)?;
        }
        let used: BTreeSet<usize> = session.instances.iter().map(|i| i.automaton).collect();
        for a in used {
            let ssa = &session.net.automata[a];
            for f in &ssa.condition_scheme.func_actions {
                if matches!(f.body, FuncBody::External)
                    && session.stubs.lookup(&f.id, f.name.as_deref()).is_none()
                {
                    return Err(SimError::MissingStub(f.id.clone()));
                }
            }
        }
        Ok(session)
    }

    fn add_instance(
        &mut self,
        name: String,
        automaton: usize,
        parent: Option<usize>,
    ) -> Result<usize, SimError> {
        let net = Arc::clone(&self.net);
        let ssa = &net.automata[automaton];
        let memory = initial_memory(ssa).map_err(|source| SimError::Eval {
            instance: name.clone(),
            source,
        })?;
        let index = self.instances.len();
        self.instances.push(Instance {
            name: name.clone(),
            automaton,
            parent,
            state: ssa
                .initial_state()
                .map(|s| s.id.clone())
                .unwrap_or_default(),
            memory,
            active_child: None,
            children: Vec::new(),
        });
        for e in net.children_of(automaton) {
            let child = self.add_instance(
                format!("{name}/{}", net.automata[e.child].id),
                e.child,
                Some(index),
            )?;
            self.instances[index].children.push(child);
        }
        Ok(index)
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn set_max_steps(&mut self, max_steps: u64) {
        self.max_steps = max_steps;
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    /// Queues a value for the next read of input io `io`.
    pub fn push_input(&mut self, io: impl Into<String>, value: Value) {
        self.inputs.entry(io.into()).or_default().push_back(value);
    }

    pub fn network(&self) -> &FlatNetwork {
        &self.net
    }

    pub fn dispatcher(&self) -> &DispatcherDoc {
        &self.disp
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn instance(&self, name: &str) -> Option<&Instance> {
        self.instances.iter().find(|i| i.name == name)
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    fn ssa(&self, i: usize) -> &Ssa {
        &self.net.automata[self.instances[i].automaton]
    }

    fn root(&self, mut i: usize) -> usize {
        while let Some(p) = self.instances[i].parent {
            i = p;
        }
        i
    }

    /// Root instances always run; a sub-instance runs while its parent
    /// runs and has it activated.
    fn live(&self, i: usize) -> bool {
        match self.instances[i].parent {
            None => true,
            Some(p) => self.instances[p].active_child == Some(i) && self.live(p),
        }
    }

    fn subtree(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut k = 0;
        while k < out.len() {
            out.extend(self.instances[out[k]].children.iter().copied());
            k += 1;
        }
        out
    }

    fn log(&mut self, i: usize, kind: TraceKind, detail: String) {
        self.trace.push(TraceEntry {
            step: self.step,
            instance: self.instances[i].name.clone(),
            kind,
            detail,
        });
    }

    fn eval_err(&self, i: usize, source: EvalError) -> SimError {
        SimError::Eval {
            instance: self.instances[i].name.clone(),
            source,
        }
    }

    fn runtime(&self, i: usize, message: String) -> SimError {
        SimError::Runtime {
            instance: self.instances[i].name.clone(),
            message,
        }
    }

    /// Table indices of the transitions enabled on `trigger` (`None` for
    /// completion) in the current state of `i`. Guards are only read.
    fn enabled(&self, i: usize, trigger: Option<&str>) -> Result<Vec<usize>, SimError> {
        let ssa = self.ssa(i);
        let mut enabled = Vec::new();
        for (idx, t) in ssa.outgoing(&self.instances[i].state) {
            if t.event.as_deref() != trigger {
                continue;
            }
            let ok = match &t.guard {
                None => true,
                Some(g) => {
                    let cond = ssa
                        .condition(g)
                        .ok_or_else(|| self.runtime(i, format!("unknown condition `{g}`")))?;
                    let v = eval_expr(&cond.expr, &self.instances[i].memory)
                        .map_err(|e| self.eval_err(i, e))?;
                    v.as_flag().ok_or_else(|| SimError::NonFlagGuard {
                        instance: self.instances[i].name.clone(),
                        guard: g.clone(),
                    })?
                }
            };
            if ok {
                enabled.push(idx);
            }
        }
        Ok(enabled)
    }

    /// The transition that fires on `trigger`, if any. Two or more enabled
    /// candidates are a conflict.
    fn select(&mut self, i: usize, trigger: Option<&str>) -> Result<Option<usize>, SimError> {
        let enabled = self.enabled(i, trigger)?;
        if enabled.len() > 1 {
            let state = self.instances[i].state.clone();
            let ssa = self.ssa(i);
            let transitions: Vec<String> = enabled
                .iter()
                .map(|&k| label(&state, &ssa.transitions[k]))
                .collect();
            self.log(i, TraceKind::Conflict, transitions.join("; "));
            return Err(SimError::GuardConflict {
                instance: self.instances[i].name.clone(),
                state,
                transitions,
            });
        }
        Ok(enabled.first().copied())
    }

    fn fire(&mut self, i: usize, idx: usize) -> Result<(), SimError> {
        let net = Arc::clone(&self.net);
        let t = &net.automata[self.instances[i].automaton].transitions[idx];
        let from = self.instances[i].state.clone();
        self.log(i, TraceKind::Transition, label(&from, t));
        self.instances[i].active_child = None;
        self.instances[i].state = t.destination.clone();
        self.enter(i, &t.destination)
    }

    fn enter(&mut self, i: usize, state: &str) -> Result<(), SimError> {
        let net = Arc::clone(&self.net);
        let ssa = &net.automata[self.instances[i].automaton];
        let Some(st) = ssa.state(state) else {
            return Err(self.runtime(i, format!("unknown state `{state}`")));
        };
        for a in &st.entry_actions {
            match a {
                ActionRef::Inline(s) => {
                    if !matches!(s, Stmt::Send { .. } | Stmt::Io(_)) {
                        self.log(i, TraceKind::EntryAction, pretty_stmt(s));
                    }
                    self.exec(i, s, 0)?;
                }
                ActionRef::Function(key) => {
                    let name = ssa
                        .func_action(key)
                        .map_or(key.as_str(), |f| f.display_name());
                    self.log(i, TraceKind::EntryAction, format!("{name}()"));
                    self.call(i, key, 0)?;
                }
                ActionRef::SendEvent { event, target } => {
                    self.send(i, event, target.as_deref());
                }
                ActionRef::Activate { child, .. } => {
                    self.log(i, TraceKind::EntryAction, format!("activate {child}"));
                    self.activate(i, child)?;
                }
            }
        }
        Ok(())
    }

    fn activate(&mut self, i: usize, child: &str) -> Result<(), SimError> {
        let found = self.instances[i]
            .children
            .iter()
            .copied()
            .find(|&c| self.ssa(c).id == child);
        let Some(c) = found else {
            return Err(self.runtime(i, format!("no sub-automaton `{child}`")));
        };
        let initial = self
            .ssa(c)
            .initial_state()
            .map(|s| s.id.clone())
            .unwrap_or_default();
        let inst = &mut self.instances[c];
        inst.state = initial;
        inst.active_child = None;
        self.instances[i].active_child = Some(c);
        Ok(())
    }

    fn send(&mut self, i: usize, event: &str, target: Option<&str>) {
        let root = self.root(i);
        let receiver = match target {
            Some(aid) => self
                .subtree(root)
                .into_iter()
                .find(|&k| self.ssa(k).id == aid),
            None => self
                .disp
                .receiver(&self.instances[root].name, event)
                .and_then(|r| self.instances.iter().position(|k| k.name == r)),
        };
        match receiver {
            Some(r) => {
                let detail = format!("{event} -> {}", self.instances[r].name);
                self.log(i, TraceKind::SendEvent, detail);
                self.queue.push_back(Pending {
                    target: r,
                    event: event.to_string(),
                });
            }
            None => self.log(i, TraceKind::EventDropped, format!("{event} (no-route)")),
        }
    }

    fn call(&mut self, i: usize, key: &str, depth: usize) -> Result<(), SimError> {
        if depth > MAX_CALL_DEPTH {
            return Err(self.runtime(i, format!("call depth exceeded in `{key}`")));
        }
        let net = Arc::clone(&self.net);
        let ssa = &net.automata[self.instances[i].automaton];
        let Some(f) = ssa.func_action(key) else {
            return Err(self.runtime(i, format!("unknown function `{key}`")));
        };
        let body: Vec<Stmt> = match &f.body {
            FuncBody::Statements(stmts) => stmts.clone(),
            FuncBody::External => {
                let Some(script) = self.stubs.lookup(&f.id, f.name.as_deref()) else {
                    return Err(SimError::MissingStub(f.id.clone()));
                };
                let n = self.invocations.entry((i, f.id.clone())).or_insert(0);
                let pick = (*n).min(script.len().saturating_sub(1));
                *n += 1;
                script.get(pick).cloned().unwrap_or_default()
            }
        };
        for s in &body {
            self.exec(i, s, depth + 1)?;
        }
        Ok(())
    }

    fn exec(&mut self, i: usize, s: &Stmt, depth: usize) -> Result<(), SimError> {
        match s {
            Stmt::Assign { target, value } => {
                let v =
                    eval_expr(value, &self.instances[i].memory).map_err(|e| self.eval_err(i, e))?;
                self.assign(i, target, v)
            }
            Stmt::Call(key) => self.call(i, key, depth),
            Stmt::Send { event, target } => {
                self.send(i, event, target.as_deref());
                Ok(())
            }
            Stmt::Io(id) => self.io(i, id),
        }
    }

    fn assign(&mut self, i: usize, target: &str, v: Value) -> Result<(), SimError> {
        let Some(var) = self.ssa(i).memory.variable(target) else {
            return Err(self.eval_err(i, EvalError::UnboundVariable(target.to_string())));
        };
        let v = coerce(var.ty, v).map_err(|e| self.eval_err(i, e))?;
        self.instances[i].memory.insert(target.to_string(), v);
        Ok(())
    }

    fn io(&mut self, i: usize, id: &str) -> Result<(), SimError> {
        let net = Arc::clone(&self.net);
        let Some(io) = net.automata[self.instances[i].automaton].io_action(id) else {
            return Err(self.runtime(i, format!("unknown io action `{id}`")));
        };
        match io.direction {
            IoDirection::Output => {
                let v = eval_expr(&io.subject, &self.instances[i].memory)
                    .map_err(|e| self.eval_err(i, e))?;
                self.log(i, TraceKind::Io, format!("{id} -> {v}"));
                Ok(())
            }
            IoDirection::Input => {
                let crate::expr::Expr::Var(target) = &io.subject else {
                    return Err(self.runtime(i, format!("input io `{id}` has no variable subject")));
                };
                let Some(v) = self.inputs.get_mut(id).and_then(VecDeque::pop_front) else {
                    return Err(SimError::MissingInput(id.to_string()));
                };
                self.log(i, TraceKind::Io, format!("{id} <- {v}"));
                self.assign(i, target, v)
            }
        }
    }

    fn deliver(&mut self, target: usize, event: &str) -> Result<(), SimError> {
        if !self.live(target) {
            self.log(
                target,
                TraceKind::EventDropped,
                format!("{event} (inactive)"),
            );
            return Ok(());
        }
        let mut chain = vec![target];
        while let Some(c) = self.instances[*chain.last().expect("non-empty")].active_child {
            chain.push(c);
        }
        for &k in chain.iter().rev() {
            if let Some(t) = self.select(k, Some(event))? {
                return self.fire(k, t);
            }
        }
        self.log(
            target,
            TraceKind::EventDropped,
            format!("{event} (no-transition)"),
        );
        Ok(())
    }

    fn completion(&mut self) -> Result<Option<(usize, usize)>, SimError> {
        for i in 0..self.instances.len() {
            if !self.live(i) {
                continue;
            }
            if let Some(t) = self.select(i, None)? {
                return Ok(Some((i, t)));
            }
        }
        Ok(None)
    }

    /// No pending events and no enabled completion transitions.
    pub fn is_quiescent(&self) -> bool {
        self.queue.is_empty()
            && (0..self.instances.len())
                .filter(|&i| self.live(i))
                .all(|i| matches!(self.enabled(i, None), Ok(v) if v.is_empty()))
    }

    /// Fires enabled completion transitions (in instance order) before
    /// taking the next queued event, until nothing can move.
    pub fn run_to_quiescence(&mut self) -> Result<(), SimError> {
        self.mark = self.trace.len();
        let mut taken = 0u64;
        loop {
            let next = self.completion()?;
            if next.is_none() && self.queue.is_empty() {
                return Ok(());
            }
            taken += 1;
            if taken > self.max_steps {
                return Err(SimError::StepBudgetExceeded(self.max_steps));
            }
            self.step += 1;
            match next {
                Some((i, t)) => self.fire(i, t)?,
                None => {
                    let p = self.queue.pop_front().expect("queue checked");
                    self.deliver(p.target, &p.event)?;
                }
            }
        }
    }

    /// Events declared by the automata of the object rooted at `i`.
    fn receives(&self, i: usize, event: &str) -> bool {
        self.subtree(i)
            .into_iter()
            .any(|k| self.ssa(k).has_event(event))
    }

    /// Brings the session to quiescence, queues `event` for `instance` and
    /// runs to quiescence again.
    pub fn inject_event(&mut self, instance: &str, event: &str) -> Result<(), SimError> {
        let Some(i) = self.instances.iter().position(|k| k.name == instance) else {
            return Err(SimError::UnknownInstance(instance.to_string()));
        };
        if !self.receives(i, event) || self.dummy_events.contains(event) {
            return Err(SimError::UnknownEvent {
                instance: instance.to_string(),
                event: event.to_string(),
            });
        }
        self.run_to_quiescence()?;
        let mark = self.trace.len();
        self.queue.push_back(Pending {
            target: i,
            event: event.to_string(),
        });
        self.run_to_quiescence()?;
        self.mark = mark;
        Ok(())
    }

    pub fn snapshot(&self) -> Snapshot {
        let mut possible = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, inst) in self.instances.iter().enumerate() {
            if !self.live(i) {
                continue;
            }
            let ssa = self.ssa(i);
            let root = &self.instances[self.root(i)].name;
            for (_, t) in ssa.outgoing(&inst.state) {
                let Some(ev) = &t.event else { continue };
                if self.dummy_events.contains(ev) || !seen.insert((root.clone(), ev.clone())) {
                    continue;
                }
                possible.push(PossibleEvent {
                    instance: root.clone(),
                    event: ev.clone(),
                    description: ssa.event(ev).and_then(|e| e.description.clone()),
                });
            }
        }
        Snapshot {
            step: self.step,
            quiescent: self.is_quiescent(),
            instances: self
                .instances
                .iter()
                .enumerate()
                .map(|(i, inst)| {
                    let ssa = self.ssa(i);
                    InstanceView {
                        name: inst.name.clone(),
                        automaton: ssa.id.clone(),
                        state: inst.state.clone(),
                        state_name: ssa
                            .state(&inst.state)
                            .map(|s| s.name.clone())
                            .unwrap_or_default(),
                        active: self.live(i),
                        variables: inst.memory.clone(),
                    }
                })
                .collect(),
            possible_events: possible,
            recent: self.trace[self.mark.min(self.trace.len())..].to_vec(),
        }
    }

    /// Applies the script's inputs, then injects its events in order.
    pub fn run_script(&mut self, script: &EventScript) -> Result<(), SimError> {
        for (io, v) in &script.inputs {
            self.push_input(io.clone(), v.clone());
        }
        self.run_to_quiescence()?;
        for e in &script.events {
            self.inject_event(&e.instance, &e.event)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
