use roxmltree::{Document, Node};

use crate::ir::{DiagCode, Diagnostic};
use crate::xml::{element_path, text_of};

use super::*;

fn required(node: Node, name: &str) -> Result<String, FrontendError> {
    node.attribute(name)
        .map(str::to_string)
        .ok_or_else(|| FrontendError::MissingAttribute {
            path: element_path(node),
            attr: name.to_string(),
        })
}

fn flag_attr(node: Node, name: &str) -> bool {
    matches!(node.attribute(name), Some("true" | "yes" | "1"))
}

fn opt(node: Node, name: &str) -> Option<String> {
    node.attribute(name).map(str::to_string)
}

pub(super) fn parse(doc: &Document) -> Result<StatechartDoc, FrontendError> {
    let root = doc.root_element();
    let mut warnings = Vec::new();
    if root.tag_name().name() != "statechart" {
        return Err(FrontendError::Malformed(format!(
            "expected <statechart>, found <{}>",
            root.tag_name().name()
        )));
    }
    let chart = parse_chart(root, required(root, "id")?, &mut warnings)?;
    Ok(StatechartDoc {
        root: chart,
        warnings,
    })
}

fn unknown(node: Node, warnings: &mut Vec<Diagnostic>) {
    warnings.push(Diagnostic {
        code: DiagCode::UnknownElement,
        id: element_path(node),
        message: format!("ignored unknown element <{}>", node.tag_name().name()),
    });
}

fn parse_chart(
    node: Node,
    id: String,
    warnings: &mut Vec<Diagnostic>,
) -> Result<Chart, FrontendError> {
    let mut chart = Chart::new(id);
    for el in node.children().filter(|c| c.is_element()) {
        match el.tag_name().name() {
            "variable" => chart.variables.push(VarDecl {
                name: required(el, "name")?,
                ty: required(el, "type")?,
                init: opt(el, "init"),
            }),
            "function" => {
                let body = text_of(el);
                chart.functions.push(FuncDecl {
                    name: required(el, "name")?,
                    body: if flag_attr(el, "external") {
                        None
                    } else {
                        Some(body.trim().to_string())
                    },
                });
            }
            "event" => chart.events.push(EventDecl {
                id: required(el, "id")?,
                description: opt(el, "description"),
            }),
            "io" => chart.io.push(IoDecl {
                id: required(el, "id")?,
                direction: required(el, "direction")?,
                mode: required(el, "mode")?,
                subject: required(el, "subject")?,
                destination: required(el, "destination")?,
            }),
            "state" | "initial" | "final" => {
                let tag = el.tag_name().name();
                let initial = tag == "initial" || flag_attr(el, "initial");
                let is_final = tag == "final" || flag_attr(el, "final");
                let name = match el.attribute("name") {
                    Some(n) => n.to_string(),
                    None if initial || is_final => pseudo_state_name(initial, &chart.states),
                    None => required(el, "name")?,
                };
                let mut state = ChartState {
                    name,
                    initial,
                    is_final,
                    entry: Vec::new(),
                    sub: None,
                };
                for c in el.children().filter(|c| c.is_element()) {
                    match c.tag_name().name() {
                        "entry" => state.entry.push(text_of(c).trim().to_string()),
                        "statechart" => {
                            let sub_id = match c.attribute("id") {
                                Some(i) => i.to_string(),
                                None => format!("{}_{}", chart.id, state.name),
                            };
                            if state.sub.is_some() {
                                return Err(FrontendError::NonTreeComposites(sub_id));
                            }
                            state.sub = Some(Box::new(parse_chart(c, sub_id, warnings)?));
                        }
                        _ => unknown(c, warnings),
                    }
                }
                chart.states.push(state);
            }
            "transition" => chart.transitions.push(ChartTransition {
                source: required(el, "source")?,
                target: required(el, "target")?,
                event: opt(el, "event"),
                guard: opt(el, "guard"),
                action: opt(el, "action"),
            }),
            _ => unknown(el, warnings),
        }
    }
    Ok(chart)
}
