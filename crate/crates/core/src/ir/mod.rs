//! Automata model: the statechart sequential automaton (SSA), hierarchical
//! networks of SSAs, and their flattened form.
//!
//! An [`Ssa`] bundles four components: the Moore core (states, received
//! events, transitions), the condition scheme (guards and function actions),
//! the memory schema and the I/O table.

mod flatten;
mod validate;

use serde::{Deserialize, Serialize};

use crate::expr::{Expr, GenericType, Stmt, TypeScope};

pub use flatten::{flatten_hierarchy, FlattenError};
pub use validate::{validate, validate_network, DiagCode, Diagnostic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    Initial,
    Ordinary,
    Final,
    Dummy,
}

impl StateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Initial => "initial",
            StateKind::Ordinary => "ordinary",
            StateKind::Final => "final",
            StateKind::Dummy => "dummy",
        }
    }

    pub fn parse(s: &str) -> Option<StateKind> {
        match s {
            "initial" => Some(StateKind::Initial),
            "ordinary" => Some(StateKind::Ordinary),
            "final" => Some(StateKind::Final),
            "dummy" => Some(StateKind::Dummy),
            _ => None,
        }
    }
}

/// An entry action, executed in order when its state is entered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ActionRef {
    Inline(Stmt),
    /// Reference to a function action of the condition scheme.
    Function(String),
    /// Emit an event. Without a target the dispatcher routing decides the
    /// receiver; with one it names an automaton of the same object.
    SendEvent {
        event: String,
        target: Option<String>,
    },
    /// Start the sub-automaton `child` from its initial state.
    Activate {
        id: String,
        child: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDef {
    pub id: String,
    pub name: String,
    pub kind: StateKind,
    pub entry_actions: Vec<ActionRef>,
}

impl StateDef {
    pub fn new(id: impl Into<String>, name: impl Into<String>, kind: StateKind) -> Self {
        StateDef {
            id: id.into(),
            name: name.into(),
            kind,
            entry_actions: Vec::new(),
        }
    }

    pub fn with_actions(mut self, actions: Vec<ActionRef>) -> Self {
        self.entry_actions = actions;
        self
    }

    /// Sub-automata started when this state is entered.
    pub fn activations(&self) -> impl Iterator<Item = &str> {
        self.entry_actions.iter().filter_map(|a| match a {
            ActionRef::Activate { child, .. } => Some(child.as_str()),
            _ => None,
        })
    }

    pub fn is_composite(&self) -> bool {
        self.activations().next().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventDef {
    pub id: String,
    pub description: Option<String>,
}

impl EventDef {
    pub fn new(id: impl Into<String>) -> Self {
        EventDef {
            id: id.into(),
            description: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub source: String,
    pub event: Option<String>,
    pub guard: Option<String>,
    pub destination: String,
}

impl Transition {
    pub fn new(source: impl Into<String>, destination: impl Into<String>) -> Self {
        Transition {
            source: source.into(),
            event: None,
            guard: None,
            destination: destination.into(),
        }
    }

    pub fn on(mut self, event: impl Into<String>) -> Self {
        self.event = Some(event.into());
        self
    }

    pub fn when(mut self, guard: impl Into<String>) -> Self {
        self.guard = Some(guard.into());
        self
    }

    pub fn is_completion(&self) -> bool {
        self.event.is_none()
    }

    /// Compact rendering used in diagnostics and traces.
    pub fn label(&self) -> String {
        let mut s = format!("{} -> {}", self.source, self.destination);
        if let Some(e) = &self.event {
            s.push_str(&format!(" on {e}"));
        }
        if let Some(g) = &self.guard {
            s.push_str(&format!(" [{g}]"));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub id: String,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FuncBody {
    /// Implemented outside the model (user code, or a simulation stub).
    External,
    Statements(Vec<Stmt>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuncAction {
    pub id: String,
    /// Routine name as written in the statechart, e.g. `verifyPINCode`.
    pub name: Option<String>,
    pub body: FuncBody,
}

impl FuncAction {
    pub fn matches(&self, key: &str) -> bool {
        self.id == key || self.name.as_deref() == Some(key)
    }

    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or(&self.id)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConditionScheme {
    pub conditions: Vec<Condition>,
    pub func_actions: Vec<FuncAction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub ty: GenericType,
    pub init: Option<Expr>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MemorySchema {
    pub variables: Vec<Variable>,
}

impl MemorySchema {
    pub fn variable(&self, name: &str) -> Option<&Variable> {
        self.variables.iter().find(|v| v.name == name)
    }
}

impl TypeScope for MemorySchema {
    fn type_of(&self, name: &str) -> Option<GenericType> {
        self.variable(name).map(|v| v.ty)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IoDirection {
    Input,
    Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IoMode {
    Stream,
    Gui,
}

impl IoMode {
    pub fn as_str(self) -> &'static str {
        match self {
            IoMode::Stream => "stream",
            IoMode::Gui => "gui",
        }
    }

    pub fn parse(s: &str) -> Option<IoMode> {
        match s {
            "stream" | "text" => Some(IoMode::Stream),
            "gui" | "GUI" => Some(IoMode::Gui),
            _ => None,
        }
    }
}

/// One operation of the virtual I/O driver. Inputs name a variable;
/// outputs carry an arbitrary expression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IoAction {
    pub id: String,
    pub direction: IoDirection,
    pub mode: IoMode,
    pub subject: Expr,
    pub destination: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IoTable {
    pub io_actions: Vec<IoAction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ssa {
    pub id: String,
    pub states: Vec<StateDef>,
    /// Events this automaton receives. Sent events appear only as entry actions.
    pub events: Vec<EventDef>,
    pub transitions: Vec<Transition>,
    pub condition_scheme: ConditionScheme,
    pub memory: MemorySchema,
    pub io_table: IoTable,
}

impl Ssa {
    pub fn new(id: impl Into<String>) -> Self {
        Ssa {
            id: id.into(),
            states: Vec::new(),
            events: Vec::new(),
            transitions: Vec::new(),
            condition_scheme: ConditionScheme::default(),
            memory: MemorySchema::default(),
            io_table: IoTable::default(),
        }
    }

    pub fn state(&self, id: &str) -> Option<&StateDef> {
        self.states.iter().find(|s| s.id == id)
    }

    pub fn initial_state(&self) -> Option<&StateDef> {
        self.states.iter().find(|s| s.kind == StateKind::Initial)
    }

    pub fn has_event(&self, id: &str) -> bool {
        self.events.iter().any(|e| e.id == id)
    }

    pub fn event(&self, id: &str) -> Option<&EventDef> {
        self.events.iter().find(|e| e.id == id)
    }

    pub fn condition(&self, id: &str) -> Option<&Condition> {
        self.condition_scheme.conditions.iter().find(|c| c.id == id)
    }

    pub fn func_action(&self, key: &str) -> Option<&FuncAction> {
        let funcs = &self.condition_scheme.func_actions;
        funcs
            .iter()
            .find(|f| f.id == key)
            .or_else(|| funcs.iter().find(|f| f.matches(key)))
    }

    pub fn io_action(&self, id: &str) -> Option<&IoAction> {
        self.io_table.io_actions.iter().find(|a| a.id == id)
    }

    /// For a dummy state, the composite state it completes: the source of
    /// the transition leading into it.
    pub fn dummy_origin(&self, dummy_id: &str) -> Option<&str> {
        self.transitions
            .iter()
            .find(|t| t.destination == dummy_id && t.event.is_some())
            .map(|t| t.source.as_str())
    }

    /// Transitions that may leave `state_id`, in table order, as
    /// `(table index, transition)`.
    ///
    /// A dummy state leaves through the transitions of its composite state
    /// (except the one entering the dummy state). A composite state offers no
    /// completion transitions: it completes through its dummy state.
    pub fn outgoing(&self, state_id: &str) -> Vec<(usize, &Transition)> {
        let Some(state) = self.state(state_id) else {
            return Vec::new();
        };
        if state.kind == StateKind::Dummy {
            let Some(origin) = self.dummy_origin(state_id) else {
                return Vec::new();
            };
            return self
                .transitions
                .iter()
                .enumerate()
                .filter(|(_, t)| t.source == origin && t.destination != state_id)
                .collect();
        }
        let composite = state.is_composite();
        self.transitions
            .iter()
            .enumerate()
            .filter(|(_, t)| t.source == state_id)
            .filter(|(_, t)| !(composite && t.is_completion()))
            .collect()
    }
}

/// Composite-state binding: state `state` of automaton `parent` is refined
/// by automaton `child`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub parent: usize,
    pub state: String,
    pub child: usize,
}

/// A tree of automata; index 0 is the main automaton.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HsaNetwork {
    pub automata: Vec<Ssa>,
    pub bindings: Vec<Binding>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivationEdge {
    pub parent: usize,
    /// Id of the activation entry action in the parent.
    pub action: String,
    pub child: usize,
    /// Event the child emits to the parent when it reaches a final state.
    pub dummy_event: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FlatNetwork {
    pub automata: Vec<Ssa>,
    pub activation_edges: Vec<ActivationEdge>,
}

impl FlatNetwork {
    pub fn automaton(&self, id: &str) -> Option<&Ssa> {
        self.automata.iter().find(|a| a.id == id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.automata.iter().position(|a| a.id == id)
    }

    /// Concatenates networks, re-indexing activation edges.
    pub fn merge(parts: impl IntoIterator<Item = FlatNetwork>) -> FlatNetwork {
        let mut out = FlatNetwork::default();
        for part in parts {
            let offset = out.automata.len();
            out.automata.extend(part.automata);
            out.activation_edges
                .extend(part.activation_edges.into_iter().map(|e| ActivationEdge {
                    parent: e.parent + offset,
                    child: e.child + offset,
                    ..e
                }));
        }
        out
    }

    /// Indices of automata that are never activated by another one.
    pub fn roots(&self) -> Vec<usize> {
        (0..self.automata.len())
            .filter(|i| !self.activation_edges.iter().any(|e| e.child == *i))
            .collect()
    }

    /// Edges whose parent is `index`, in edge order.
    pub fn children_of(&self, index: usize) -> Vec<&ActivationEdge> {
        self.activation_edges
            .iter()
            .filter(|e| e.parent == index)
            .collect()
    }
}
