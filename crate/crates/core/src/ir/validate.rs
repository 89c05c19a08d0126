use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::*;
use crate::expr::{assignable, typecheck, typecheck_guard, Expr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagCode {
    DuplicateState,
    MissingInitial,
    AmbiguousInitial,
    MissingFinal,
    DummyWithActions,
    DuplicateEvent,
    UnresolvedState,
    UnresolvedEvent,
    UnresolvedCondition,
    UnresolvedFunction,
    UnresolvedIo,
    UnresolvedVariable,
    UnresolvedAutomaton,
    DuplicateTransition,
    DuplicateSchemeId,
    DuplicateVariable,
    DuplicateIoId,
    DuplicateAutomaton,
    TypeError,
    DuplicateInstance,
    UnresolvedInstance,
    ConflictingRoute,
    SelfRoute,
    UnknownElement,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::DuplicateState => "duplicate-state",
            DiagCode::MissingInitial => "missing-initial-state",
            DiagCode::AmbiguousInitial => "ambiguous-initial-state",
            DiagCode::MissingFinal => "missing-final-state",
            DiagCode::DummyWithActions => "dummy-with-actions",
            DiagCode::DuplicateEvent => "duplicate-event",
            DiagCode::UnresolvedState => "unresolved-state",
            DiagCode::UnresolvedEvent => "unresolved-event",
            DiagCode::UnresolvedCondition => "unresolved-condition",
            DiagCode::UnresolvedFunction => "unresolved-function",
            DiagCode::UnresolvedIo => "unresolved-io",
            DiagCode::UnresolvedVariable => "unresolved-variable",
            DiagCode::UnresolvedAutomaton => "unresolved-automaton",
            DiagCode::DuplicateTransition => "duplicate-transition",
            DiagCode::DuplicateSchemeId => "duplicate-scheme-id",
            DiagCode::DuplicateVariable => "duplicate-variable",
            DiagCode::DuplicateIoId => "duplicate-io-id",
            DiagCode::DuplicateAutomaton => "duplicate-automaton",
            DiagCode::TypeError => "type-error",
            DiagCode::DuplicateInstance => "duplicate-instance",
            DiagCode::UnresolvedInstance => "unresolved-instance",
            DiagCode::ConflictingRoute => "conflicting-route",
            DiagCode::SelfRoute => "self-route",
            DiagCode::UnknownElement => "unknown-element",
        }
    }

    /// Warnings are reported but do not make an artifact invalid.
    pub fn is_warning(self) -> bool {
        matches!(self, DiagCode::SelfRoute | DiagCode::UnknownElement)
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: DiagCode,
    /// Id of the offending element.
    pub id: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.code, self.id, self.message)
    }
}

struct Sink<'a> {
    ssa: &'a Ssa,
    out: Vec<Diagnostic>,
}

impl Sink<'_> {
    fn push(&mut self, code: DiagCode, id: impl Into<String>, message: impl Into<String>) {
        self.out.push(Diagnostic {
            code,
            id: id.into(),
            message: format!("{}: {}", self.ssa.id, message.into()),
        });
    }

    fn check_expr(&mut self, owner: &str, e: &Expr, guard: bool) {
        let res = if guard {
            typecheck_guard(e, &self.ssa.memory)
        } else {
            typecheck(e, &self.ssa.memory).map(|_| ())
        };
        if let Err(err) = res {
            self.push(DiagCode::TypeError, owner, err.to_string());
        }
    }

    fn check_stmt(&mut self, owner: &str, stmt: &Stmt) {
        match stmt {
            Stmt::Assign { target, value } => match self.ssa.memory.variable(target) {
                None => self.push(
                    DiagCode::UnresolvedVariable,
                    owner,
                    format!("assignment to undeclared variable `{target}`"),
                ),
                Some(var) => match typecheck(value, &self.ssa.memory) {
                    Ok(found) => {
                        if let Err(err) = assignable(var.ty, found) {
                            self.push(
                                DiagCode::TypeError,
                                owner,
                                format!("assignment to `{target}`: {err}"),
                            );
                        }
                    }
                    Err(err) => self.push(DiagCode::TypeError, owner, err.to_string()),
                },
            },
            Stmt::Call(f) => {
                if self.ssa.func_action(f).is_none() {
                    self.push(
                        DiagCode::UnresolvedFunction,
                        owner,
                        format!("call of unknown function action `{f}`"),
                    );
                }
            }
            Stmt::Send { .. } => {}
            Stmt::Io(id) => {
                if self.ssa.io_action(id).is_none() {
                    self.push(
                        DiagCode::UnresolvedIo,
                        owner,
                        format!("unknown io action `{id}`"),
                    );
                }
            }
        }
    }
}

/// Checks every structural invariant of one automaton. An empty result
/// means all cross references resolve and all expressions typecheck.
pub fn validate(ssa: &Ssa) -> Vec<Diagnostic> {
    let mut sink = Sink {
        ssa,
        out: Vec::new(),
    };

    // States.
    let mut seen = BTreeSet::new();
    for s in &ssa.states {
        if !seen.insert(s.id.as_str()) {
            sink.push(
                DiagCode::DuplicateState,
                &s.id,
                format!("state id `{}` declared twice", s.id),
            );
        }
    }
    let initials: Vec<_> = ssa
        .states
        .iter()
        .filter(|s| s.kind == StateKind::Initial)
        .collect();
    match initials.len() {
        0 => sink.push(DiagCode::MissingInitial, &ssa.id, "no initial state"),
        1 => {}
        _ => sink.push(
            DiagCode::AmbiguousInitial,
            &initials[1].id,
            format!("{} initial states", initials.len()),
        ),
    }
    if !ssa.states.iter().any(|s| s.kind == StateKind::Final) {
        sink.push(DiagCode::MissingFinal, &ssa.id, "no final state");
    }

    // Events.
    let mut seen = BTreeSet::new();
    for e in &ssa.events {
        if !seen.insert(e.id.as_str()) {
            sink.push(
                DiagCode::DuplicateEvent,
                &e.id,
                format!("event `{}` declared twice", e.id),
            );
        }
    }

    // Condition scheme ids share one namespace.
    let mut seen = BTreeSet::new();
    let scheme_ids = ssa
        .condition_scheme
        .conditions
        .iter()
        .map(|c| &c.id)
        .chain(ssa.condition_scheme.func_actions.iter().map(|f| &f.id));
    for id in scheme_ids {
        if !seen.insert(id.as_str()) {
            sink.push(
                DiagCode::DuplicateSchemeId,
                id,
                format!("condition scheme id `{id}` declared twice"),
            );
        }
    }
    for c in &ssa.condition_scheme.conditions {
        sink.check_expr(&c.id, &c.expr, true);
    }
    for f in &ssa.condition_scheme.func_actions {
        if let FuncBody::Statements(stmts) = &f.body {
            for stmt in stmts {
                sink.check_stmt(&f.id, stmt);
            }
        }
    }

    // Memory.
    let mut seen = BTreeSet::new();
    for v in &ssa.memory.variables {
        if !seen.insert(v.name.as_str()) {
            sink.push(
                DiagCode::DuplicateVariable,
                &v.name,
                format!("variable `{}` declared twice", v.name),
            );
        }
        if let Some(init) = &v.init {
            // Initializers are constant: they see no other variable.
            let empty: &[(&str, GenericType)] = &[];
            match typecheck(init, empty).and_then(|t| assignable(v.ty, t)) {
                Ok(()) => {}
                Err(err) => sink.push(
                    DiagCode::TypeError,
                    &v.name,
                    format!("initializer of `{}`: {err}", v.name),
                ),
            }
        }
    }

    // I/O table.
    let mut seen = BTreeSet::new();
    for io in &ssa.io_table.io_actions {
        if !seen.insert(io.id.as_str()) {
            sink.push(
                DiagCode::DuplicateIoId,
                &io.id,
                format!("io action `{}` declared twice", io.id),
            );
        }
        match io.direction {
            IoDirection::Input => match &io.subject {
                Expr::Var(v) if ssa.memory.variable(v).is_some() => {}
                other => sink.push(
                    DiagCode::UnresolvedVariable,
                    &io.id,
                    format!(
                        "input subject `{}` is not a declared variable",
                        crate::expr::pretty(other)
                    ),
                ),
            },
            IoDirection::Output => sink.check_expr(&io.id, &io.subject, false),
        }
    }

    // Entry actions.
    for s in &ssa.states {
        if s.kind == StateKind::Dummy && !s.entry_actions.is_empty() {
            sink.push(
                DiagCode::DummyWithActions,
                &s.id,
                "dummy state carries entry actions",
            );
        }
        for action in &s.entry_actions {
            match action {
                ActionRef::Inline(stmt) => sink.check_stmt(&s.id, stmt),
                ActionRef::Function(f) => {
                    if ssa.func_action(f).is_none() {
                        sink.push(
                            DiagCode::UnresolvedFunction,
                            &s.id,
                            format!("entry action references unknown function `{f}`"),
                        );
                    }
                }
                ActionRef::SendEvent { .. } | ActionRef::Activate { .. } => {}
            }
        }
    }

    // Transitions.
    let mut seen = BTreeSet::new();
    for (i, t) in ssa.transitions.iter().enumerate() {
        let tid = format!("transition[{i}] {}", t.label());
        for end in [&t.source, &t.destination] {
            if ssa.state(end).is_none() {
                sink.push(
                    DiagCode::UnresolvedState,
                    &tid,
                    format!("unknown state `{end}`"),
                );
            }
        }
        if let Some(e) = &t.event {
            if !ssa.has_event(e) {
                sink.push(
                    DiagCode::UnresolvedEvent,
                    &tid,
                    format!("event `{e}` is not in the event table"),
                );
            }
        }
        if let Some(g) = &t.guard {
            if ssa.condition(g).is_none() {
                sink.push(
                    DiagCode::UnresolvedCondition,
                    &tid,
                    format!("guard `{g}` is not in the condition scheme"),
                );
            }
        }
        if !seen.insert(t) {
            sink.push(
                DiagCode::DuplicateTransition,
                &tid,
                "transition listed twice",
            );
        }
    }

    sink.out
}

/// Validates every automaton plus the cross-automaton references of the
/// network (unique ids, activation targets, explicit send targets).
pub fn validate_network(net: &FlatNetwork) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut ids = BTreeSet::new();
    for ssa in &net.automata {
        if !ids.insert(ssa.id.as_str()) {
            out.push(Diagnostic {
                code: DiagCode::DuplicateAutomaton,
                id: ssa.id.clone(),
                message: format!("automaton id `{}` used twice", ssa.id),
            });
        }
        out.extend(validate(ssa));
        for s in &ssa.states {
            for a in &s.entry_actions {
                let target = match a {
                    ActionRef::Activate { child, .. } => Some(child),
                    ActionRef::SendEvent {
                        target: Some(t), ..
                    } => Some(t),
                    _ => None,
                };
                if let Some(t) = target {
                    if net.automaton(t).is_none() {
                        out.push(Diagnostic {
                            code: DiagCode::UnresolvedAutomaton,
                            id: s.id.clone(),
                            message: format!("{}: unknown automaton `{t}`", ssa.id),
                        });
                    }
                }
            }
        }
    }
    for e in &net.activation_edges {
        let ok = net.automata.get(e.parent).is_some_and(|p| {
            p.states.iter().any(|s| {
                s.entry_actions.iter().any(|a| {
                    matches!(a, ActionRef::Activate { id, child }
                        if *id == e.action
                            && net.automata.get(e.child).is_some_and(|c| c.id == *child))
                })
            }) && p.has_event(&e.dummy_event)
        });
        if !ok {
            out.push(Diagnostic {
                code: DiagCode::UnresolvedAutomaton,
                id: e.action.clone(),
                message: "activation edge does not match an activation action".into(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::atm_controller;

    fn minimal() -> Ssa {
        let mut ssa = Ssa::new("M");
        ssa.states = vec![
            StateDef::new("M_S0", "S0", StateKind::Initial),
            StateDef::new("M_End", "End", StateKind::Final),
        ];
        ssa.transitions = vec![Transition::new("M_S0", "M_End")];
        ssa
    }

    fn codes(ssa: &Ssa) -> Vec<DiagCode> {
        validate(ssa).into_iter().map(|d| d.code).collect()
    }

    #[test]
    fn atm_controller_is_valid() {
        assert_eq!(validate(&atm_controller()), vec![]);
    }

    #[test]
    fn minimal_automaton_is_valid() {
        assert_eq!(validate(&minimal()), vec![]);
    }

    #[test]
    fn unresolved_event() {
        let mut ssa = minimal();
        ssa.transitions[0].event = Some("evX".into());
        let diags = validate(&ssa);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagCode::UnresolvedEvent);
        assert_eq!(diags[0].code.as_str(), "unresolved-event");
        assert!(diags[0].message.contains("evX"));
    }

    #[test]
    fn initial_and_final_markers() {
        let mut ssa = minimal();
        ssa.states[1].kind = StateKind::Ordinary;
        assert_eq!(codes(&ssa), vec![DiagCode::MissingFinal]);

        let mut ssa = minimal();
        ssa.states
            .push(StateDef::new("M_S9", "S9", StateKind::Initial));
        assert_eq!(codes(&ssa), vec![DiagCode::AmbiguousInitial]);

        let mut ssa = minimal();
        ssa.states[0].kind = StateKind::Ordinary;
        assert_eq!(codes(&ssa), vec![DiagCode::MissingInitial]);
    }

    #[test]
    fn dummy_states_carry_no_actions() {
        let mut ssa = minimal();
        ssa.states.push(
            StateDef::new("M_D", "D", StateKind::Dummy).with_actions(vec![ActionRef::SendEvent {
                event: "e".into(),
                target: None,
            }]),
        );
        assert_eq!(codes(&ssa), vec![DiagCode::DummyWithActions]);
    }

    #[test]
    fn cross_references() {
        let mut ssa = minimal();
        ssa.transitions
            .push(Transition::new("M_S0", "M_Nowhere").when("C9"));
        ssa.transitions.push(Transition::new("M_S0", "M_End"));
        ssa.states[1].entry_actions = vec![
            ActionRef::Function("nope".into()),
            ActionRef::Inline(crate::expr::parse_stmt("ghost := 1").unwrap()),
        ];
        let got = codes(&ssa);
        assert!(got.contains(&DiagCode::UnresolvedState));
        assert!(got.contains(&DiagCode::UnresolvedCondition));
        assert!(got.contains(&DiagCode::DuplicateTransition));
        assert!(got.contains(&DiagCode::UnresolvedFunction));
        assert!(got.contains(&DiagCode::UnresolvedVariable));
    }

    #[test]
    fn expressions_typecheck_against_memory() {
        let mut ssa = minimal();
        ssa.memory.variables.push(Variable {
            name: "n".into(),
            ty: GenericType::Integer,
            init: Some(crate::expr::parse_expr("true").unwrap()),
        });
        ssa.condition_scheme.conditions.push(Condition {
            id: "C1".into(),
            expr: crate::expr::parse_expr("n + 1").unwrap(),
        });
        ssa.condition_scheme.func_actions.push(FuncAction {
            id: "C1".into(),
            name: None,
            body: FuncBody::External,
        });
        let got = codes(&ssa);
        assert_eq!(
            got,
            vec![
                DiagCode::DuplicateSchemeId,
                DiagCode::TypeError,
                DiagCode::TypeError
            ]
        );
    }
}
