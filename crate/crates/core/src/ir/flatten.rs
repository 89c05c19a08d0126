use std::collections::BTreeSet;

use thiserror::Error;

use super::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlattenError {
    #[error("cycle in composite-state bindings through automata {0:?}")]
    CycleInBindings(Vec<usize>),
    #[error("automaton {0} is bound to more than one composite state")]
    ChildBoundTwice(usize),
    #[error("the main automaton (index 0) cannot refine a composite state")]
    RootAsChild,
    #[error("binding references automaton index {0}, network has {1} automata")]
    UnknownAutomaton(usize, usize),
    #[error("binding references unknown state `{state}` of automaton {automaton}")]
    UnknownState { automaton: usize, state: String },
    #[error("state `{0}` is bound to more than one sub-automaton")]
    StateBoundTwice(String),
    #[error("synthetic name `{0}` collides with an existing element")]
    NameCollision(String),
}

impl FlattenError {
    pub fn code(&self) -> &'static str {
        match self {
            FlattenError::CycleInBindings(_) | FlattenError::RootAsChild => "cycle-in-bindings",
            FlattenError::ChildBoundTwice(_) => "child-bound-twice",
            FlattenError::UnknownAutomaton(..) | FlattenError::UnknownState { .. } => {
                "unresolved-binding"
            }
            FlattenError::StateBoundTwice(_) => "state-bound-twice",
            FlattenError::NameCollision(_) => "name-collision",
        }
    }
}

fn check_tree(net: &HsaNetwork) -> Result<(), FlattenError> {
    let n = net.automata.len();
    let mut children = BTreeSet::new();
    let mut states = BTreeSet::new();
    for b in &net.bindings {
        for idx in [b.parent, b.child] {
            if idx >= n {
                return Err(FlattenError::UnknownAutomaton(idx, n));
            }
        }
        if b.child == 0 {
            return Err(FlattenError::RootAsChild);
        }
        if !children.insert(b.child) {
            return Err(FlattenError::ChildBoundTwice(b.child));
        }
        if net.automata[b.parent].state(&b.state).is_none() {
            return Err(FlattenError::UnknownState {
                automaton: b.parent,
                state: b.state.clone(),
            });
        }
        if !states.insert((b.parent, b.state.as_str())) {
            return Err(FlattenError::StateBoundTwice(b.state.clone()));
        }
    }
    // Every child has exactly one parent, so walking up either terminates at
    // an unbound automaton or revisits a node.
    let parent_of = |c: usize| net.bindings.iter().find(|b| b.child == c).map(|b| b.parent);
    for start in 0..n {
        let mut path = vec![start];
        let mut cur = start;
        while let Some(p) = parent_of(cur) {
            if let Some(pos) = path.iter().position(|x| *x == p) {
                let mut cycle = path[pos..].to_vec();
                cycle.sort_unstable();
                return Err(FlattenError::CycleInBindings(cycle));
            }
            path.push(p);
            cur = p;
        }
    }
    Ok(())
}

/// Reduces composite states to plain SSA elements.
///
/// For each binding `(k, s, c)` automaton `k` gains a dummy state, a dummy
/// event and a transition from `s` to the dummy state on that event; `s`
/// gains an activation entry action starting `c`; every final state of `c`
/// gains a send-event action emitting the dummy event back to `k`. Original
/// elements are kept verbatim and in order; synthetic ones are appended.
pub fn flatten_hierarchy(net: &HsaNetwork) -> Result<FlatNetwork, FlattenError> {
    check_tree(net)?;
    let mut automata = net.automata.clone();
    let mut edges = Vec::with_capacity(net.bindings.len());

    for b in &net.bindings {
        let child_id = automata[b.child].id.clone();
        let parent_id = automata[b.parent].id.clone();
        let suffix = format!("{}_{}", b.parent, b.state);
        let dummy_state = format!("DummyState_{suffix}");
        let dummy_event = format!("DummyEvent_{suffix}");
        let dummy_action = format!("DummyAction_{suffix}");

        let parent = &mut automata[b.parent];
        let taken = |name: &str| {
            parent.state(name).is_some()
                || parent.has_event(name)
                || parent.condition(name).is_some()
                || parent.func_action(name).is_some()
                || parent.states.iter().any(|s| {
                    s.entry_actions
                        .iter()
                        .any(|a| matches!(a, ActionRef::Activate { id, .. } if id == name))
                })
        };
        for name in [&dummy_state, &dummy_event, &dummy_action] {
            if taken(name) {
                return Err(FlattenError::NameCollision(name.clone()));
            }
        }

        let composite = parent
            .states
            .iter_mut()
            .find(|s| s.id == b.state)
            .expect("checked by check_tree");
        composite.entry_actions.push(ActionRef::Activate {
            id: dummy_action.clone(),
            child: child_id.clone(),
        });
        parent.states.push(StateDef::new(
            dummy_state.clone(),
            dummy_state.clone(),
            StateKind::Dummy,
        ));
        parent.events.push(EventDef {
            id: dummy_event.clone(),
            description: Some(format!("completion of sub-automaton {child_id}")),
        });
        parent
            .transitions
            .push(Transition::new(b.state.clone(), dummy_state).on(dummy_event.clone()));

        for s in automata[b.child]
            .states
            .iter_mut()
            .filter(|s| s.kind == StateKind::Final)
        {
            s.entry_actions.push(ActionRef::SendEvent {
                event: dummy_event.clone(),
                target: Some(parent_id.clone()),
            });
        }

        edges.push(ActivationEdge {
            parent: b.parent,
            action: dummy_action,
            child: b.child,
            dummy_event,
        });
    }

    Ok(FlatNetwork {
        automata,
        activation_edges: edges,
    })
}
