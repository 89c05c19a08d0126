use crate::expr::{pretty, pretty_stmt, pretty_stmts};
use crate::ir::{ActionRef, FuncBody, Ssa};

fn state_name<'a>(ssa: &'a Ssa, id: &'a str) -> &'a str {
    ssa.state(id).map(|s| s.name.as_str()).unwrap_or(id)
}

/// Normalized text form of an automaton's component tables: states,
/// received events, variables, conditions, transitions and outputs.
/// Transition and output rows are tab-separated; guards are pretty-printed
/// in brackets.
pub fn render_tables(ssa: &Ssa) -> String {
    let mut out = String::new();
    let line = |out: &mut String, s: &str| {
        out.push_str(s);
        out.push('\n');
    };
    line(&mut out, &format!("# automaton {}", ssa.id));
    line(&mut out, "# states");
    for s in &ssa.states {
        line(&mut out, &s.name);
    }
    line(&mut out, "# events");
    for e in &ssa.events {
        line(&mut out, &e.id);
    }
    line(&mut out, "# variables");
    for v in &ssa.memory.variables {
        let init = v
            .init
            .as_ref()
            .map(|i| format!(" = {}", pretty(i)))
            .unwrap_or_default();
        line(&mut out, &format!("{}: {}{init}", v.name, v.ty));
    }
    line(&mut out, "# conditions");
    for c in &ssa.condition_scheme.conditions {
        line(&mut out, &format!("[{}]", pretty(&c.expr)));
    }
    line(
        &mut out,
        "# transitions: source, event, condition, destination",
    );
    for t in &ssa.transitions {
        let guard = t
            .guard
            .as_deref()
            .and_then(|g| ssa.condition(g))
            .map(|c| format!("[{}]", pretty(&c.expr)))
            .unwrap_or_default();
        line(
            &mut out,
            &format!(
                "{}\t{}\t{guard}\t{}",
                state_name(ssa, &t.source),
                t.event.as_deref().unwrap_or(""),
                state_name(ssa, &t.destination)
            ),
        );
    }
    line(
        &mut out,
        "# outputs: state, assign actions, send-event actions",
    );
    for s in ssa.states.iter().filter(|s| !s.entry_actions.is_empty()) {
        let mut assigns = Vec::new();
        let mut sends = Vec::new();
        for a in &s.entry_actions {
            match a {
                ActionRef::SendEvent { event, target } => sends.push(match target {
                    Some(t) => format!("{event}@{t}"),
                    None => event.clone(),
                }),
                ActionRef::Inline(stmt) => assigns.push(pretty_stmt(stmt)),
                ActionRef::Function(id) => assigns.push(match ssa.func_action(id) {
                    Some(f) => match (&f.name, &f.body) {
                        (Some(n), _) => format!("{n}()"),
                        (None, FuncBody::Statements(b)) => pretty_stmts(b),
                        (None, FuncBody::External) => format!("{id}()"),
                    },
                    None => format!("{id}()"),
                }),
                ActionRef::Activate { child, .. } => assigns.push(format!("activate({child})")),
            }
        }
        line(
            &mut out,
            &format!("{}\t{}\t{}", s.name, assigns.join(", "), sends.join(", ")),
        );
    }
    out
}
