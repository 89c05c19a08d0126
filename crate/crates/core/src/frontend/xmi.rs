//! The supported XMI subset: one `uml:StateMachine` (the first found) with
//! `ownedAttribute`, `ownedOperation`, `ownedRule` and a single `region` of
//! `subvertex` (initial `uml:Pseudostate`, `uml:State`, `uml:FinalState`)
//! and `transition` elements. A state with a nested `region` is composite.
//! Events are `uml:SignalEvent`/`uml:CallEvent` elements referenced from
//! `trigger/@event`.

use std::collections::BTreeMap;

use roxmltree::{Document, Node};

use crate::ir::{DiagCode, Diagnostic};
use crate::xml::{element_path, text_of};

use super::*;

/// `xmi:type`, `xmi:id`: namespaced attribute looked up by local name.
fn xmi_attr<'a>(node: Node<'a, '_>, name: &str) -> Option<&'a str> {
    node.attributes()
        .find(|a| a.name() == name && a.namespace().is_some())
        .map(|a| a.value())
}

fn uml_type<'a>(node: Node<'a, '_>) -> &'a str {
    xmi_attr(node, "type")
        .map(|t| t.rsplit(':').next().unwrap_or(t))
        .unwrap_or("")
}

fn elements<'a, 'i>(node: Node<'a, 'i>) -> impl Iterator<Item = Node<'a, 'i>> {
    node.children().filter(|c| c.is_element())
}

struct Ctx<'a, 'i> {
    by_id: BTreeMap<&'a str, Node<'a, 'i>>,
    warnings: Vec<Diagnostic>,
}

impl<'a, 'i> Ctx<'a, 'i> {
    fn unknown(&mut self, node: Node) {
        self.warnings.push(Diagnostic {
            code: DiagCode::UnknownElement,
            id: element_path(node),
            message: format!("ignored unknown element <{}>", node.tag_name().name()),
        });
    }

    fn name_of(&self, reference: &str) -> Option<&'a str> {
        self.by_id.get(reference).and_then(|n| n.attribute("name"))
    }

    /// Text of an opaque body: `body` children, a `body` attribute, or a
    /// `value` attribute.
    fn opaque(&self, node: Node) -> Option<String> {
        let bodies: Vec<String> = elements(node)
            .filter(|c| c.tag_name().name() == "body")
            .map(|c| text_of(c).trim().to_string())
            .collect();
        if !bodies.is_empty() {
            return Some(bodies.join("; "));
        }
        if let Some(b) = node.attribute("body").or(node.attribute("value")) {
            return Some(b.to_string());
        }
        elements(node)
            .find(|c| matches!(c.tag_name().name(), "specification" | "defaultValue"))
            .and_then(|c| self.opaque(c))
    }

    fn event_name(&self, trigger: Node) -> Option<String> {
        if let Some(r) = trigger.attribute("event") {
            let ev = self.by_id.get(r);
            let name = ev
                .and_then(|e| e.attribute("name"))
                .or_else(|| {
                    ev.and_then(|e| e.attribute("signal"))
                        .and_then(|s| self.name_of(s))
                })
                .unwrap_or(r);
            return Some(name.to_string());
        }
        trigger.attribute("name").map(str::to_string)
    }
}

fn missing(node: Node, attr: &str) -> FrontendError {
    FrontendError::MissingAttribute {
        path: element_path(node),
        attr: attr.to_string(),
    }
}

fn generic_type_name(raw: &str) -> String {
    let base = raw.rsplit(['#', ':', '/']).next().unwrap_or(raw);
    match base.to_ascii_lowercase().as_str() {
        "int" | "integer" => "integer".into(),
        "bool" | "boolean" | "flag" => "flag".into(),
        "real" | "double" | "float" => "real".into(),
        "string" => "string".into(),
        "char" | "character" => "char".into(),
        _ => base.to_string(),
    }
}

pub(super) fn parse<'a, 'i>(doc: &'a Document<'i>) -> Result<StatechartDoc, FrontendError> {
    let mut ctx = Ctx {
        by_id: BTreeMap::new(),
        warnings: Vec::new(),
    };
    for n in doc.descendants().filter(|n| n.is_element()) {
        if let Some(id) = xmi_attr(n, "id") {
            ctx.by_id.insert(id, n);
        }
    }
    let machines: Vec<Node> = doc
        .descendants()
        .filter(|n| n.is_element() && uml_type(*n) == "StateMachine")
        .collect();
    let Some(machine) = machines.first().copied() else {
        return Err(FrontendError::Malformed(
            "no uml:StateMachine element found".into(),
        ));
    };
    for extra in &machines[1..] {
        ctx.warnings.push(Diagnostic {
            code: DiagCode::UnknownElement,
            id: element_path(*extra),
            message: "only the first state machine of a document is read".into(),
        });
    }

    let id = machine
        .attribute("name")
        .map(str::to_string)
        .ok_or_else(|| missing(machine, "name"))?;
    let mut chart = Chart::new(id);
    let mut region = None;
    for el in elements(machine) {
        match el.tag_name().name() {
            "ownedAttribute" => {
                let name = el
                    .attribute("name")
                    .ok_or_else(|| missing(el, "name"))?
                    .to_string();
                let raw_ty = el
                    .attribute("type")
                    .map(|t| ctx.name_of(t).unwrap_or(t).to_string())
                    .or_else(|| {
                        elements(el)
                            .find(|c| c.tag_name().name() == "type")
                            .and_then(|c| c.attribute("href"))
                            .map(str::to_string)
                    })
                    .ok_or_else(|| missing(el, "type"))?;
                chart.variables.push(VarDecl {
                    name,
                    ty: generic_type_name(&raw_ty),
                    init: elements(el)
                        .find(|c| c.tag_name().name() == "defaultValue")
                        .and_then(|c| ctx.opaque(c))
                        .or_else(|| el.attribute("default").map(str::to_string)),
                });
            }
            "ownedOperation" => chart.functions.push(FuncDecl {
                name: el
                    .attribute("name")
                    .ok_or_else(|| missing(el, "name"))?
                    .to_string(),
                body: ctx.opaque(el),
            }),
            "ownedRule" => {}
            "region" => {
                if region.is_some() {
                    return Err(FrontendError::Malformed(
                        "orthogonal regions are not supported".into(),
                    ));
                }
                region = Some(el);
            }
            _ => ctx.unknown(el),
        }
    }
    let region = region.ok_or_else(|| {
        FrontendError::Malformed(format!("state machine `{}` has no region", chart.id))
    })?;
    read_region(&mut ctx, region, &mut chart)?;

    for n in doc.descendants().filter(|n| n.is_element()) {
        if matches!(uml_type(n), "SignalEvent" | "CallEvent") {
            if let Some(name) = n.attribute("name") {
                let description = elements(n)
                    .find(|c| c.tag_name().name() == "ownedComment")
                    .and_then(|c| {
                        c.attribute("body")
                            .map(str::to_string)
                            .or_else(|| ctx.opaque(c))
                    });
                if !chart.events.iter().any(|e| e.id == name) {
                    chart.events.push(EventDecl {
                        id: name.to_string(),
                        description,
                    });
                }
            }
        }
    }
    Ok(StatechartDoc {
        root: chart,
        warnings: ctx.warnings,
    })
}

fn read_region(ctx: &mut Ctx, region: Node, chart: &mut Chart) -> Result<(), FrontendError> {
    let mut names: BTreeMap<String, String> = BTreeMap::new();
    for v in elements(region).filter(|c| c.tag_name().name() == "subvertex") {
        let vid = xmi_attr(v, "id").ok_or_else(|| missing(v, "xmi:id"))?;
        let (initial, is_final) = match uml_type(v) {
            "Pseudostate" => match v.attribute("kind").unwrap_or("initial") {
                "initial" => (true, false),
                other => {
                    return Err(FrontendError::Malformed(format!(
                        "{}: pseudostate kind `{other}` is not supported",
                        element_path(v)
                    )))
                }
            },
            "FinalState" => (false, true),
            "State" => (false, false),
            other => {
                return Err(FrontendError::Malformed(format!(
                    "{}: vertex type `{other}` is not supported",
                    element_path(v)
                )))
            }
        };
        let name = match v.attribute("name").filter(|n| !n.is_empty()) {
            Some(n) => n.to_string(),
            None if initial || is_final => pseudo_state_name(initial, &chart.states),
            None => return Err(missing(v, "name")),
        };
        let mut state = ChartState {
            name: name.clone(),
            initial,
            is_final,
            entry: Vec::new(),
            sub: None,
        };
        for c in elements(v) {
            match c.tag_name().name() {
                "entry" => {
                    let bodies: Vec<String> = elements(c)
                        .filter(|b| b.tag_name().name() == "body")
                        .map(|b| text_of(b).trim().to_string())
                        .collect();
                    if bodies.is_empty() {
                        state.entry.extend(ctx.opaque(c));
                    } else {
                        state.entry.extend(bodies);
                    }
                }
                "region" => {
                    let sub_id = c
                        .attribute("name")
                        .map(str::to_string)
                        .unwrap_or_else(|| format!("{}_{}", chart.id, name));
                    if state.sub.is_some() {
                        return Err(FrontendError::Malformed(
                            "orthogonal regions are not supported".into(),
                        ));
                    }
                    let mut sub = Chart::new(sub_id);
                    read_region(ctx, c, &mut sub)?;
                    state.sub = Some(Box::new(sub));
                }
                _ => ctx.unknown(c),
            }
        }
        names.insert(vid.to_string(), name);
        chart.states.push(state);
    }

    for t in elements(region) {
        match t.tag_name().name() {
            "subvertex" => continue,
            "transition" => {}
            _ => {
                ctx.unknown(t);
                continue;
            }
        }
        let end = |attr: &str| -> Result<String, FrontendError> {
            let r = t.attribute(attr).ok_or_else(|| missing(t, attr))?;
            Ok(names.get(r).cloned().unwrap_or_else(|| r.to_string()))
        };
        let mut tr = ChartTransition {
            source: end("source")?,
            target: end("target")?,
            event: None,
            guard: None,
            action: None,
        };
        if let Some(g) = t.attribute("guard") {
            tr.guard = ctx.by_id.get(g).copied().and_then(|rule| ctx.opaque(rule));
        }
        for c in elements(t) {
            match c.tag_name().name() {
                "trigger" => {
                    if tr.event.is_some() {
                        return Err(FrontendError::Malformed(format!(
                            "{}: transitions take at most one trigger",
                            element_path(t)
                        )));
                    }
                    tr.event = ctx.event_name(c);
                }
                "guard" | "ownedRule" => tr.guard = ctx.opaque(c),
                "effect" => tr.action = ctx.opaque(c).or(Some(String::new())),
                _ => ctx.unknown(c),
            }
        }
        chart.transitions.push(tr);
    }
    Ok(())
}
