use std::collections::BTreeSet;

use roxmltree::Node;

use crate::expr::{parse_expr, parse_stmt, parse_stmts, Expr, GenericType};
use crate::ir::*;
use crate::xml::{children_named, element_path, first_child, parse_document, text_of};

use super::{dispatch_dtd, pim_dtd, DispatcherDoc, Instance, PimError, Route};

fn attr(node: Node, name: &str) -> String {
    node.attribute(name).unwrap_or_default().to_string()
}

fn dangling(node: Node, message: String) -> PimError {
    PimError::DanglingReference {
        path: element_path(node),
        message,
    }
}

fn invalid(node: Node, message: String) -> PimError {
    PimError::Invalid {
        path: element_path(node),
        message,
    }
}

fn expr_at(node: Node, text: &str) -> Result<Expr, PimError> {
    parse_expr(text).map_err(|e| PimError::Expression {
        path: element_path(node),
        message: format!("`{text}`: {e}"),
    })
}

// Structural children guaranteed by the DTD.
pub(crate) fn child<'a, 'i>(node: Node<'a, 'i>, name: &str) -> Node<'a, 'i> {
    first_child(node, name).expect("required by DTD")
}

/// Parses and validates a PIM document. Besides the DTD, every reference
/// inside the document must resolve.
pub fn read_pim(text: &str) -> Result<FlatNetwork, PimError> {
    let doc = parse_document(text).map_err(|e| PimError::Malformed(e.to_string()))?;
    let root = doc.root_element();
    pim_dtd().validate(root, "pim")?;

    let mut net = FlatNetwork::default();
    let mut ids = BTreeSet::new();
    let phsa_nodes: Vec<Node> = children_named(root, "phsa").collect();
    for node in &phsa_nodes {
        let ssa = read_phsa(*node)?;
        if !ids.insert(ssa.id.clone()) {
            return Err(invalid(
                *node,
                format!("automaton `{}` defined twice", ssa.id),
            ));
        }
        net.automata.push(ssa);
    }

    // Cross-automaton references.
    for node in &phsa_nodes {
        for n in node.descendants() {
            let target = match n.tag_name().name() {
                "act_activate" => n.attribute("phsa_ref"),
                "act_send_event" => n.attribute("target_ref"),
                _ => None,
            };
            if let Some(t) = target {
                if !ids.contains(t) {
                    return Err(dangling(n, format!("unknown automaton `{t}`")));
                }
            }
        }
    }

    read_hierarchy(root, &mut net)?;
    Ok(net)
}

/// Reads the optional `hierarchy` element under `root` into activation edges.
pub(crate) fn read_hierarchy(root: Node, net: &mut FlatNetwork) -> Result<(), PimError> {
    if let Some(h) = first_child(root, "hierarchy") {
        for a in children_named(h, "activation") {
            let index = |key: &str| {
                let id = attr(a, key);
                net.index_of(&id)
                    .ok_or_else(|| dangling(a, format!("unknown automaton `{id}`")))
            };
            let parent = index("parent_ref")?;
            let child = index("child_ref")?;
            let action = attr(a, "act_id");
            let dummy_event = attr(a, "event_ref");
            let p = &net.automata[parent];
            let has_action = p.states.iter().any(|s| {
                s.entry_actions.iter().any(|x| {
                    matches!(x, ActionRef::Activate { id, child: c }
                    if *id == action && *c == net.automata[child].id)
                })
            });
            if !has_action {
                return Err(dangling(
                    a,
                    format!(
                        "`{}` has no activation `{action}` of `{}`",
                        p.id, net.automata[child].id
                    ),
                ));
            }
            if !p.has_event(&dummy_event) {
                return Err(dangling(
                    a,
                    format!("`{}` has no event `{dummy_event}`", p.id),
                ));
            }
            net.activation_edges.push(ActivationEdge {
                parent,
                action,
                child,
                dummy_event,
            });
        }
    }
    Ok(())
}

fn read_phsa(node: Node) -> Result<Ssa, PimError> {
    let mut ssa = Ssa::new(attr(node, "phsa_id"));
    read_condscheme(child(node, "condscheme"), &mut ssa)?;
    read_memory(child(node, "memory"), &mut ssa)?;
    read_iosystem(child(node, "iosystem"), &mut ssa)?;
    read_automat(child(node, "automat"), &mut ssa)?;
    Ok(ssa)
}

pub(crate) fn read_condscheme(scheme: Node, ssa: &mut Ssa) -> Result<(), PimError> {
    for c in children_named(child(scheme, "conditions"), "condition") {
        ssa.condition_scheme.conditions.push(Condition {
            id: attr(c, "cond_id"),
            expr: expr_at(c, text_of(c).trim())?,
        });
    }
    for f in children_named(child(scheme, "func_actions"), "func_action") {
        let body = if f.attribute("body") == Some("external") {
            FuncBody::External
        } else {
            let text = text_of(f);
            FuncBody::Statements(parse_stmts(&text).map_err(|e| PimError::Expression {
                path: element_path(f),
                message: format!("`{}`: {e}", text.trim()),
            })?)
        };
        ssa.condition_scheme.func_actions.push(FuncAction {
            id: attr(f, "act_id"),
            name: f.attribute("name").map(str::to_string),
            body,
        });
    }
    Ok(())
}

fn read_memory(memory: Node, ssa: &mut Ssa) -> Result<(), PimError> {
    for v in children_named(child(memory, "variables"), "variable") {
        let ty = GenericType::parse(&attr(v, "type")).expect("enumerated by DTD");
        let init = match v.attribute("init") {
            Some(text) => Some(expr_at(v, text)?),
            None => None,
        };
        ssa.memory.variables.push(Variable {
            name: attr(v, "name"),
            ty,
            init,
        });
    }
    Ok(())
}

fn read_iosystem(iosystem: Node, ssa: &mut Ssa) -> Result<(), PimError> {
    for a in child(iosystem, "io_actions")
        .children()
        .filter(|c| c.is_element())
    {
        let direction = if a.tag_name().name() == "i_action" {
            IoDirection::Input
        } else {
            IoDirection::Output
        };
        let mode_text = attr(a, "mode");
        let mode = IoMode::parse(&mode_text)
            .ok_or_else(|| invalid(a, format!("unknown io mode `{mode_text}`")))?;
        ssa.io_table.io_actions.push(IoAction {
            id: attr(a, "io_id"),
            direction,
            mode,
            subject: expr_at(a, &attr(a, "subject"))?,
            destination: attr(a, "destination"),
        });
    }
    Ok(())
}

/// Reads states, events and transitions; the condition scheme must already
/// be in `ssa` so that references can be checked.
pub(crate) fn read_automat(automat: Node, ssa: &mut Ssa) -> Result<(), PimError> {
    for s in children_named(child(automat, "states"), "state") {
        let name = attr(s, "state_name");
        let kind = match s.attribute("state_kind") {
            Some(k) => StateKind::parse(k).expect("enumerated by DTD"),
            None if name == "S0" => StateKind::Initial,
            None if name == "End" => StateKind::Final,
            None => StateKind::Ordinary,
        };
        if attr(s, "phsa_ref") != ssa.id {
            return Err(dangling(
                s,
                format!(
                    "phsa_ref `{}` inside automaton `{}`",
                    attr(s, "phsa_ref"),
                    ssa.id
                ),
            ));
        }
        let mut state = StateDef::new(attr(s, "state_id"), name, kind);
        for ea in children_named(s, "entry_action") {
            let a = ea
                .children()
                .find(|c| c.is_element())
                .expect("required by DTD");
            let action = match a.tag_name().name() {
                "act_inline" => {
                    let text = text_of(a);
                    ActionRef::Inline(parse_stmt(text.trim()).map_err(|e| {
                        PimError::Expression {
                            path: element_path(a),
                            message: format!("`{}`: {e}", text.trim()),
                        }
                    })?)
                }
                "act_func" => {
                    let id = attr(a, "act_id");
                    if ssa.func_action(&id).is_none() {
                        return Err(dangling(a, format!("unknown function action `{id}`")));
                    }
                    ActionRef::Function(id)
                }
                "act_send_event" => ActionRef::SendEvent {
                    event: attr(a, "event_id"),
                    target: a.attribute("target_ref").map(str::to_string),
                },
                _ => ActionRef::Activate {
                    id: attr(a, "act_id"),
                    child: attr(a, "phsa_ref"),
                },
            };
            state.entry_actions.push(action);
        }
        ssa.states.push(state);
    }

    for e in children_named(child(automat, "events"), "event") {
        ssa.events.push(EventDef {
            id: attr(e, "event_id"),
            description: e.attribute("description").map(str::to_string),
        });
    }

    for t in children_named(child(automat, "transitions"), "transition") {
        let tr = Transition {
            source: attr(t, "state_src"),
            event: t.attribute("event_ref").map(str::to_string),
            guard: t.attribute("cond_ref").map(str::to_string),
            destination: attr(t, "state_dest"),
        };
        let what = tr.label();
        for s in [&tr.source, &tr.destination] {
            if ssa.state(s).is_none() {
                return Err(dangling(
                    t,
                    format!("transition {what}: unknown state `{s}`"),
                ));
            }
        }
        if let Some(e) = &tr.event {
            if !ssa.has_event(e) {
                return Err(dangling(
                    t,
                    format!("transition {what}: unknown event `{e}`"),
                ));
            }
        }
        if let Some(g) = &tr.guard {
            if ssa.condition(g).is_none() {
                return Err(dangling(
                    t,
                    format!("transition {what}: unknown condition `{g}`"),
                ));
            }
        }
        ssa.transitions.push(tr);
    }
    Ok(())
}

/// Parses a dispatcher document. References into the network are checked
/// separately by [`DispatcherDoc::validate`].
pub fn read_dispatcher(text: &str) -> Result<DispatcherDoc, PimError> {
    let doc = parse_document(text).map_err(|e| PimError::Malformed(e.to_string()))?;
    let root = doc.root_element();
    dispatch_dtd().validate(root, "dispatcher")?;
    Ok(DispatcherDoc {
        application: root.attribute("application").map(str::to_string),
        instances: children_named(root, "instance")
            .map(|i| Instance {
                id: attr(i, "instance_id"),
                phsa: attr(i, "phsa_ref"),
            })
            .collect(),
        routes: children_named(root, "route")
            .map(|r| Route {
                sender: attr(r, "sender"),
                event: attr(r, "event_ref"),
                receiver: attr(r, "receiver"),
            })
            .collect(),
    })
}
