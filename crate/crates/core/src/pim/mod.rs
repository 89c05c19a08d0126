//! PIM XML: serialization of a [`FlatNetwork`] and its application
//! dispatcher, validated against the shipped DTDs.

mod read;
mod write;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dtd::{Dtd, DtdError};
use crate::ir::{ActionRef, DiagCode, Diagnostic, FlatNetwork};

pub(crate) use read::{read_automat, read_condscheme, read_hierarchy};
pub use read::{read_dispatcher, read_pim};
pub(crate) use write::pim_mode;
pub use write::{write_dispatcher, write_pim, write_pim_document};

pub const PIM_DTD: &str = include_str!("../../schemas/pim_phsa.dtd");
pub const DISPATCH_DTD: &str = include_str!("../../schemas/dispatch.dtd");

pub(crate) fn pim_dtd() -> &'static Dtd {
    static DTD: OnceLock<Dtd> = OnceLock::new();
    DTD.get_or_init(|| Dtd::parse(PIM_DTD).expect("shipped PIM DTD parses"))
}

pub(crate) fn dispatch_dtd() -> &'static Dtd {
    static DTD: OnceLock<Dtd> = OnceLock::new();
    DTD.get_or_init(|| Dtd::parse(DISPATCH_DTD).expect("shipped dispatcher DTD parses"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PimError {
    #[error("malformed XML: {0}")]
    Malformed(String),
    #[error("DTD violation at {0}")]
    Dtd(#[from] DtdError),
    #[error("{path}: dangling reference: {message}")]
    DanglingReference { path: String, message: String },
    #[error("{path}: {message}")]
    Expression { path: String, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

impl PimError {
    pub fn code(&self) -> &'static str {
        match self {
            PimError::Malformed(_) => "malformed-xml",
            PimError::Dtd(_) => "dtd-violation",
            PimError::DanglingReference { .. } => "dangling-reference",
            PimError::Expression { .. } => "expression-parse-error",
            PimError::Invalid { .. } => "invalid-model",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub id: String,
    /// Root automaton of the object; its sub-automata come along.
    pub phsa: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub sender: String,
    pub event: String,
    pub receiver: String,
}

/// Object instances (activated in list order) and event routing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DispatcherDoc {
    pub application: Option<String>,
    pub instances: Vec<Instance>,
    pub routes: Vec<Route>,
}

impl DispatcherDoc {
    pub fn instance(&self, id: &str) -> Option<&Instance> {
        self.instances.iter().find(|i| i.id == id)
    }

    pub fn receiver(&self, sender: &str, event: &str) -> Option<&str> {
        self.routes
            .iter()
            .find(|r| r.sender == sender && r.event == event)
            .map(|r| r.receiver.as_str())
    }

    /// Checks instance and route references against `net`. Self-routes are
    /// reported as warnings.
    pub fn validate(&self, net: &FlatNetwork) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let diag = |code, id: &str, message: String| Diagnostic {
            code,
            id: id.to_string(),
            message,
        };
        let mut ids = BTreeSet::new();
        let children: BTreeSet<usize> = net.activation_edges.iter().map(|e| e.child).collect();
        for inst in &self.instances {
            if !ids.insert(inst.id.as_str()) {
                out.push(diag(
                    DiagCode::DuplicateInstance,
                    &inst.id,
                    format!("instance `{}` declared twice", inst.id),
                ));
            }
            match net.index_of(&inst.phsa) {
                None => out.push(diag(
                    DiagCode::UnresolvedAutomaton,
                    &inst.id,
                    format!(
                        "instance `{}` refers to unknown automaton `{}`",
                        inst.id, inst.phsa
                    ),
                )),
                Some(i) if children.contains(&i) => out.push(diag(
                    DiagCode::UnresolvedAutomaton,
                    &inst.id,
                    format!(
                        "instance `{}` refers to `{}`, which refines a composite state",
                        inst.id, inst.phsa
                    ),
                )),
                Some(_) => {}
            }
        }
        let mut seen: BTreeMap<(&str, &str), &str> = BTreeMap::new();
        for r in &self.routes {
            for end in [&r.sender, &r.receiver] {
                if self.instance(end).is_none() {
                    out.push(diag(
                        DiagCode::UnresolvedInstance,
                        end,
                        format!("route for `{}` names unknown instance `{end}`", r.event),
                    ));
                }
            }
            if let Some(prev) = seen.insert((&r.sender, &r.event), &r.receiver) {
                if prev != r.receiver {
                    out.push(diag(
                        DiagCode::ConflictingRoute,
                        &r.event,
                        format!(
                            "`{}` from `{}` routed to both `{prev}` and `{}`",
                            r.event, r.sender, r.receiver
                        ),
                    ));
                }
            }
            if r.sender == r.receiver {
                out.push(diag(
                    DiagCode::SelfRoute,
                    &r.event,
                    format!("`{}` is routed from `{}` to itself", r.event, r.sender),
                ));
            }
        }
        out
    }
}

/// Events an automaton may emit without an explicit target, i.e. the ones
/// that need a dispatcher route.
pub fn routed_sends(net: &FlatNetwork, automaton: usize) -> Vec<&str> {
    let mut out = Vec::new();
    for s in &net.automata[automaton].states {
        for a in &s.entry_actions {
            if let ActionRef::SendEvent {
                event,
                target: None,
            } = a
            {
                if !out.contains(&event.as_str()) {
                    out.push(event.as_str());
                }
            }
        }
    }
    out
}
