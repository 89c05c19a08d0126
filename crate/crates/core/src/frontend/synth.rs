use std::collections::{BTreeMap, BTreeSet};

use sha2::{Digest, Sha256};

use crate::expr::{parse_expr, parse_stmts, pretty_stmt, Expr, GenericType, Stmt};
use crate::ir::*;

use super::*;

fn expr_at(location: String, text: &str) -> Result<Expr, FrontendError> {
    parse_expr(text).map_err(|e| FrontendError::Expression {
        location,
        message: format!("`{text}`: {e}"),
    })
}

fn stmts_at(location: String, text: &str) -> Result<Vec<Stmt>, FrontendError> {
    parse_stmts(text).map_err(|e| FrontendError::Expression {
        location,
        message: format!("`{text}`: {e}"),
    })
}

/// Guard text without surrounding brackets, e.g. `[errors=3]` -> `errors=3`.
fn guard_text(raw: &str) -> &str {
    let t = raw.trim();
    t.strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(t)
        .trim()
}

fn content_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Synthesizes the component tables of every chart in the document. The
/// root chart becomes automaton 0; each composite state adds a binding to
/// the automaton of its sub-chart. The result passes [`validate`].
pub fn synthesize_ssa(doc: &StatechartDoc) -> Result<HsaNetwork, FrontendError> {
    let mut net = HsaNetwork {
        automata: Vec::new(),
        bindings: Vec::new(),
    };
    let mut seen = BTreeSet::new();
    build(&doc.root, &mut net, &mut seen)?;
    let diags: Vec<Diagnostic> = net
        .automata
        .iter()
        .flat_map(validate)
        .filter(|d| !d.code.is_warning())
        .collect();
    if !diags.is_empty() {
        return Err(FrontendError::Invalid(diags));
    }
    Ok(net)
}

fn build(
    chart: &Chart,
    net: &mut HsaNetwork,
    seen: &mut BTreeSet<String>,
) -> Result<usize, FrontendError> {
    if !seen.insert(chart.id.clone()) {
        return Err(FrontendError::NonTreeComposites(chart.id.clone()));
    }
    let index = net.automata.len();
    net.automata.push(synth_chart(chart)?);
    for s in &chart.states {
        if let Some(sub) = &s.sub {
            let child = build(sub, net, seen)?;
            net.bindings.push(Binding {
                parent: index,
                state: format!("{}_{}", chart.id, s.name),
                child,
            });
        }
    }
    Ok(index)
}

struct Funcs<'a> {
    chart: &'a Chart,
    items: Vec<FuncAction>,
}

impl Funcs<'_> {
    fn next_id(&self) -> String {
        format!("{}_Func{}", self.chart.id, self.items.len() + 1)
    }

    /// Id of the function action for routine `name`, creating it on first
    /// use. Undeclared routines are external.
    fn call(&mut self, name: &str) -> Result<String, FrontendError> {
        if let Some(f) = self.items.iter().find(|f| f.name.as_deref() == Some(name)) {
            return Ok(f.id.clone());
        }
        let id = self.next_id();
        let index = self.items.len();
        self.items.push(FuncAction {
            id: id.clone(),
            name: Some(name.to_string()),
            body: FuncBody::External,
        });
        let decl = self.chart.functions.iter().find(|f| f.name == name);
        if let Some(FuncDecl {
            body: Some(text), ..
        }) = decl
        {
            let stmts = stmts_at(
                format!("chart `{}`, function `{name}`", self.chart.id),
                text,
            )?;
            for s in &stmts {
                if let Stmt::Call(callee) = s {
                    self.call(callee)?;
                }
            }
            self.items[index].body = FuncBody::Statements(stmts);
        }
        Ok(id)
    }

    /// Id of an anonymous function action wrapping one statement; equal
    /// statements share one action.
    fn wrap(&mut self, stmt: Stmt) -> String {
        let key = pretty_stmt(&stmt);
        if let Some(f) = self.items.iter().find(|f| {
            f.name.is_none()
                && matches!(&f.body, FuncBody::Statements(b) if b.len() == 1 && pretty_stmt(&b[0]) == key)
        }) {
            return f.id.clone();
        }
        let id = self.next_id();
        self.items.push(FuncAction {
            id: id.clone(),
            name: None,
            body: FuncBody::Statements(vec![stmt]),
        });
        id
    }
}

fn synth_chart(chart: &Chart) -> Result<Ssa, FrontendError> {
    let aid = chart.id.as_str();
    let sid = |name: &str| format!("{aid}_{name}");
    let mut ssa = Ssa::new(aid);

    for v in &chart.variables {
        let ty = GenericType::parse(&v.ty).ok_or_else(|| FrontendError::UnknownType {
            chart: aid.into(),
            variable: v.name.clone(),
            ty: v.ty.clone(),
        })?;
        let init = match &v.init {
            Some(text) => Some(expr_at(
                format!("chart `{aid}`, variable `{}`", v.name),
                text,
            )?),
            None => None,
        };
        ssa.memory.variables.push(Variable {
            name: v.name.clone(),
            ty,
            init,
        });
    }

    let mut funcs = Funcs {
        chart,
        items: Vec::new(),
    };
    for s in &chart.states {
        let kind = if s.initial {
            StateKind::Initial
        } else if s.is_final {
            StateKind::Final
        } else {
            StateKind::Ordinary
        };
        let mut state = StateDef::new(sid(&s.name), s.name.clone(), kind);
        for text in s.entry.iter().filter(|t| !t.trim().is_empty()) {
            let location = format!("chart `{aid}`, state `{}`, entry action", s.name);
            for stmt in stmts_at(location, text)? {
                let action = match stmt {
                    Stmt::Send { event, target } => ActionRef::SendEvent { event, target },
                    Stmt::Call(f) => ActionRef::Function(funcs.call(&f)?),
                    other => ActionRef::Function(funcs.wrap(other)),
                };
                state.entry_actions.push(action);
            }
        }
        ssa.states.push(state);
    }
    for f in &chart.functions {
        funcs.call(&f.name)?;
    }
    ssa.condition_scheme.func_actions = funcs.items;

    let mut guard_ids = BTreeMap::new();
    for t in &chart.transitions {
        let label = t.label();
        if t.action.as_deref().is_some_and(|a| !a.trim().is_empty()) {
            return Err(FrontendError::TransitionAction {
                chart: aid.into(),
                transition: label,
            });
        }
        for end in [&t.source, &t.target] {
            if !chart.states.iter().any(|s| s.name == *end) {
                return Err(FrontendError::UnknownState {
                    chart: aid.into(),
                    transition: label.clone(),
                    name: end.clone(),
                });
            }
        }
        let event = t
            .event
            .as_deref()
            .map(str::trim)
            .filter(|e| !e.is_empty())
            .map(str::to_string);
        if let Some(e) = &event {
            if !ssa.has_event(e) {
                let description = chart
                    .events
                    .iter()
                    .find(|d| d.id == *e)
                    .and_then(|d| d.description.clone());
                ssa.events.push(EventDef {
                    id: e.clone(),
                    description,
                });
            }
        }
        let guard = match t.guard.as_deref().map(guard_text).filter(|g| !g.is_empty()) {
            None => None,
            Some(text) => Some(condition_id(&mut ssa, &mut guard_ids, text, &label)?),
        };
        ssa.transitions.push(Transition {
            source: sid(&t.source),
            event,
            guard,
            destination: sid(&t.target),
        });
    }

    for io in &chart.io {
        let bad = |message: String| FrontendError::BadIo {
            chart: aid.into(),
            io: io.id.clone(),
            message,
        };
        let direction = match io.direction.as_str() {
            "input" | "in" => IoDirection::Input,
            "output" | "out" => IoDirection::Output,
            d => return Err(bad(format!("unknown direction `{d}`"))),
        };
        let mode =
            IoMode::parse(&io.mode).ok_or_else(|| bad(format!("unknown mode `{}`", io.mode)))?;
        ssa.io_table.io_actions.push(IoAction {
            id: io.id.clone(),
            direction,
            mode,
            subject: expr_at(format!("chart `{aid}`, io `{}`", io.id), &io.subject)?,
            destination: io.destination.clone(),
        });
    }
    Ok(ssa)
}

/// Content-hashed condition id; equal guard texts share one condition.
fn condition_id(
    ssa: &mut Ssa,
    texts: &mut BTreeMap<String, String>,
    text: &str,
    label: &str,
) -> Result<String, FrontendError> {
    if let Some(id) = texts.get(text) {
        return Ok(id.clone());
    }
    let expr = expr_at(
        format!("chart `{}`, transition {label}, guard", ssa.id),
        text,
    )?;
    let hash = content_hash(text);
    let mut len = 8;
    let id = loop {
        let id = format!("{}_C_{}", ssa.id, &hash[..len]);
        if ssa.condition(&id).is_none() {
            break id;
        }
        len += 4;
    };
    ssa.condition_scheme.conditions.push(Condition {
        id: id.clone(),
        expr,
    });
    texts.insert(text.to_string(), id.clone());
    Ok(id)
}
