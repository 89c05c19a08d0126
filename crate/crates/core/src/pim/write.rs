use crate::expr::{pretty, pretty_stmt, pretty_stmts};
use crate::ir::{ActionRef, FlatNetwork, FuncBody, IoDirection, IoMode, Ssa};
use crate::xml::XmlWriter;

use super::DispatcherDoc;

pub(crate) fn pim_mode(mode: IoMode) -> &'static str {
    match mode {
        IoMode::Stream => "stream",
        IoMode::Gui => "GUI",
    }
}

/// Serializes the network and its dispatcher as `(pim, dispatcher)` texts.
pub fn write_pim(net: &FlatNetwork, disp: &DispatcherDoc) -> (String, String) {
    (write_pim_document(net), write_dispatcher(disp))
}

pub fn write_pim_document(net: &FlatNetwork) -> String {
    let mut w = XmlWriter::new();
    w.declaration(Some("no"));
    w.doctype("pim", "pim_phsa.dtd");
    w.open("pim", &[]);
    for ssa in &net.automata {
        write_phsa(&mut w, ssa);
    }
    if !net.activation_edges.is_empty() {
        w.open("hierarchy", &[]);
        for e in &net.activation_edges {
            w.empty(
                "activation",
                &[
                    ("parent_ref", &net.automata[e.parent].id),
                    ("act_id", &e.action),
                    ("child_ref", &net.automata[e.child].id),
                    ("event_ref", &e.dummy_event),
                ],
            );
        }
        w.close("hierarchy");
    }
    w.close("pim");
    w.finish()
}

fn open_list(w: &mut XmlWriter, name: &str, empty: bool) -> bool {
    if empty {
        w.empty(name, &[]);
        false
    } else {
        w.open(name, &[]);
        true
    }
}

fn write_phsa(w: &mut XmlWriter, ssa: &Ssa) {
    w.open("phsa", &[("phsa_id", &ssa.id)]);
    write_automat(w, ssa);

    w.open("condscheme", &[]);
    let scheme = &ssa.condition_scheme;
    if open_list(w, "conditions", scheme.conditions.is_empty()) {
        for c in &scheme.conditions {
            w.text_element("condition", &[("cond_id", &c.id)], &pretty(&c.expr));
        }
        w.close("conditions");
    }
    if open_list(w, "func_actions", scheme.func_actions.is_empty()) {
        for f in &scheme.func_actions {
            let mut attrs = vec![("act_id", f.id.as_str())];
            if let Some(n) = &f.name {
                attrs.push(("name", n));
            }
            match &f.body {
                FuncBody::External => {
                    attrs.push(("body", "external"));
                    w.empty("func_action", &attrs);
                }
                FuncBody::Statements(stmts) if stmts.is_empty() => w.empty("func_action", &attrs),
                FuncBody::Statements(stmts) => {
                    w.text_element("func_action", &attrs, &pretty_stmts(stmts))
                }
            }
        }
        w.close("func_actions");
    }
    w.close("condscheme");

    w.open("memory", &[]);
    if open_list(w, "variables", ssa.memory.variables.is_empty()) {
        for v in &ssa.memory.variables {
            let init = v.init.as_ref().map(pretty);
            let mut attrs = vec![("name", v.name.as_str()), ("type", v.ty.as_str())];
            if let Some(i) = &init {
                attrs.push(("init", i));
            }
            w.empty("variable", &attrs);
        }
        w.close("variables");
    }
    w.close("memory");

    w.open("iosystem", &[]);
    if open_list(w, "io_actions", ssa.io_table.io_actions.is_empty()) {
        for a in &ssa.io_table.io_actions {
            let name = match a.direction {
                IoDirection::Input => "i_action",
                IoDirection::Output => "o_action",
            };
            let subject = pretty(&a.subject);
            w.empty(
                name,
                &[
                    ("io_id", &a.id),
                    ("mode", pim_mode(a.mode)),
                    ("subject", &subject),
                    ("destination", &a.destination),
                ],
            );
        }
        w.close("io_actions");
    }
    w.close("iosystem");
    w.close("phsa");
}

fn write_automat(w: &mut XmlWriter, ssa: &Ssa) {
    w.open("automat", &[]);
    w.open("states", &[]);
    for s in &ssa.states {
        let attrs = [
            ("phsa_ref", ssa.id.as_str()),
            ("state_id", &s.id),
            ("state_name", &s.name),
            ("state_kind", s.kind.as_str()),
        ];
        if s.entry_actions.is_empty() {
            w.empty("state", &attrs);
            continue;
        }
        w.open("state", &attrs);
        for a in &s.entry_actions {
            w.open("entry_action", &[]);
            match a {
                ActionRef::Inline(stmt) => w.text_element("act_inline", &[], &pretty_stmt(stmt)),
                ActionRef::Function(id) => w.empty("act_func", &[("act_id", id)]),
                ActionRef::SendEvent { event, target } => {
                    let mut attrs = vec![("event_id", event.as_str())];
                    if let Some(t) = target {
                        attrs.push(("target_ref", t));
                    }
                    w.empty("act_send_event", &attrs);
                }
                ActionRef::Activate { id, child } => {
                    w.empty("act_activate", &[("act_id", id), ("phsa_ref", child)])
                }
            }
            w.close("entry_action");
        }
        w.close("state");
    }
    w.close("states");

    if open_list(w, "events", ssa.events.is_empty()) {
        for e in &ssa.events {
            let mut attrs = vec![("event_id", e.id.as_str())];
            if let Some(d) = &e.description {
                attrs.push(("description", d));
            }
            w.empty("event", &attrs);
        }
        w.close("events");
    }

    if open_list(w, "transitions", ssa.transitions.is_empty()) {
        for t in &ssa.transitions {
            let mut attrs = vec![
                ("state_src", t.source.as_str()),
                ("state_dest", &t.destination),
            ];
            if let Some(e) = &t.event {
                attrs.push(("event_ref", e));
            }
            if let Some(g) = &t.guard {
                attrs.push(("cond_ref", g));
            }
            w.empty("transition", &attrs);
        }
        w.close("transitions");
    }
    w.close("automat");
}

pub fn write_dispatcher(disp: &DispatcherDoc) -> String {
    let mut w = XmlWriter::new();
    w.declaration(Some("no"));
    w.doctype("dispatcher", "dispatch.dtd");
    let app = disp.application.as_deref();
    let attrs: Vec<(&str, &str)> = app.map(|a| ("application", a)).into_iter().collect();
    if disp.instances.is_empty() && disp.routes.is_empty() {
        w.empty("dispatcher", &attrs);
        return w.finish();
    }
    w.open("dispatcher", &attrs);
    for i in &disp.instances {
        w.empty("instance", &[("instance_id", &i.id), ("phsa_ref", &i.phsa)]);
    }
    for r in &disp.routes {
        w.empty(
            "route",
            &[
                ("sender", &r.sender),
                ("event_ref", &r.event),
                ("receiver", &r.receiver),
            ],
        );
    }
    w.close("dispatcher");
    w.finish()
}
