use roxmltree::Node;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse_expr, Expr, GenericType, TypeScope};
use crate::ir::{FlatNetwork, IoDirection, IoMode, Ssa, Variable};
use crate::pim::{
    pim_dtd, read_automat, read_condscheme, read_hierarchy, DispatcherDoc, Instance, PimError,
    Route,
};
use crate::xml::{children_named, element_path, first_child, parse_document, text_of};

use super::profile::TargetSyntax;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PsmError {
    #[error("malformed XML: {0}")]
    Malformed(String),
    #[error("{path}: {message}")]
    Structure { path: String, message: String },
    #[error("{path}: variable `{variable}` has no platform type")]
    UnresolvedGenericType { path: String, variable: String },
    #[error(transparent)]
    Pim(#[from] PimError),
}

impl PsmError {
    pub fn code(&self) -> &'static str {
        match self {
            PsmError::Malformed(_) => "malformed-xml",
            PsmError::Structure { .. } => "malformed-psm",
            PsmError::UnresolvedGenericType { .. } => "unresolved-generic-type",
            PsmError::Pim(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsmVariable {
    pub name: String,
    pub platform_type: String,
    /// Generic type recovered from the platform type, when recognizable.
    pub generic: Option<GenericType>,
    pub init: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsmIoAction {
    pub id: String,
    pub direction: IoDirection,
    pub mode: IoMode,
    pub subject: Expr,
    pub destination: String,
    pub control: Option<String>,
    /// Platform statement; still holds the `{subject}` placeholder.
    pub statement: String,
}

/// One automaton of a PSM. `ssa` carries the Moore core and the condition
/// scheme; its memory lists the variables whose generic type is known.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsmAutomaton {
    pub ssa: Ssa,
    pub variables: Vec<PsmVariable>,
    pub io_actions: Vec<PsmIoAction>,
}

impl TypeScope for PsmAutomaton {
    fn type_of(&self, name: &str) -> Option<GenericType> {
        self.variables
            .iter()
            .find(|v| v.name == name)
            .and_then(|v| v.generic)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsmDocument {
    /// Document element name, e.g. `psm_j2ee`.
    pub root: String,
    pub profile: Option<String>,
    pub syntax: Option<TargetSyntax>,
    pub imports: Vec<String>,
    pub ordered_collection: Option<String>,
    pub unordered_collection: Option<String>,
    pub automata: Vec<PsmAutomaton>,
    /// Activation edges by automaton index, as in [`FlatNetwork`].
    pub activation_edges: Vec<crate::ir::ActivationEdge>,
    pub dispatcher: Option<DispatcherDoc>,
}

impl PsmDocument {
    /// Best-effort inverse of a profile's type map.
    pub fn generic_type(&self, platform: &str) -> Option<GenericType> {
        if Some(platform) == self.ordered_collection.as_deref() {
            return Some(GenericType::OrdCollect);
        }
        if Some(platform) == self.unordered_collection.as_deref() {
            return Some(GenericType::UnordCollect);
        }
        let ty = match platform.to_ascii_lowercase().as_str() {
            "int" | "integer" | "long" | "short" | "int32" | "int64" => GenericType::Integer,
            "double" | "float" | "real" | "decimal" | "single" => GenericType::Real,
            "boolean" | "bool" | "flag" => GenericType::Flag,
            "char" | "character" => GenericType::Char,
            "string" => GenericType::String,
            _ => return None,
        };
        Some(ty)
    }

    pub fn automaton(&self, id: &str) -> Option<&PsmAutomaton> {
        self.automata.iter().find(|a| a.ssa.id == id)
    }
}

fn structure(node: Node, message: impl Into<String>) -> PsmError {
    PsmError::Structure {
        path: element_path(node),
        message: message.into(),
    }
}

fn required<'a, 'i>(node: Node<'a, 'i>, name: &str) -> Result<Node<'a, 'i>, PsmError> {
    first_child(node, name).ok_or_else(|| structure(node, format!("missing <{name}>")))
}

fn attr<'a>(node: Node<'a, '_>, name: &str) -> Result<&'a str, PsmError> {
    node.attribute(name)
        .ok_or_else(|| structure(node, format!("missing attribute `{name}`")))
}

fn expr_at(node: Node, text: &str) -> Result<Expr, PsmError> {
    parse_expr(text).map_err(|e| {
        PsmError::Pim(PimError::Expression {
            path: element_path(node),
            message: format!("`{text}`: {e}"),
        })
    })
}

/// Reads a PSM produced by [`super::transform`].
pub fn parse_psm(text: &str) -> Result<PsmDocument, PsmError> {
    let doc = parse_document(text).map_err(|e| PsmError::Malformed(e.to_string()))?;
    let root = doc.root_element();
    let imports = children_named(required(root, "Imports")?, "import")
        .map(|i| text_of(i).trim().to_string())
        .collect();
    let foundation = required(root, "FoundationClasses")?;
    let class = |name| first_child(foundation, name).map(|n| text_of(n).trim().to_string());
    let syntax = match root.attribute("syntax") {
        Some(s) => Some(
            TargetSyntax::parse(s)
                .ok_or_else(|| structure(root, format!("unknown syntax `{s}`")))?,
        ),
        None => None,
    };
    let mut psm = PsmDocument {
        root: root.tag_name().name().to_string(),
        profile: root.attribute("profile").map(str::to_string),
        syntax,
        imports,
        ordered_collection: class("OrderedCollection"),
        unordered_collection: class("UnorderedCollection"),
        automata: Vec::new(),
        activation_edges: Vec::new(),
        dispatcher: None,
    };

    for node in children_named(root, "phsa") {
        let id = attr(node, "phsa_id")?;
        if psm.automaton(id).is_some() {
            return Err(structure(node, format!("automaton `{id}` defined twice")));
        }
        let mut ssa = Ssa::new(id);
        let scheme = required(node, "condscheme")?;
        let automat = required(node, "automat")?;
        pim_dtd()
            .validate(scheme, "condscheme")
            .map_err(PimError::from)?;
        pim_dtd()
            .validate(automat, "automat")
            .map_err(PimError::from)?;
        read_condscheme(scheme, &mut ssa)?;
        read_automat(automat, &mut ssa)?;

        let mut variables = Vec::new();
        for v in children_named(
            required(required(node, "memory")?, "variables")?,
            "variable",
        ) {
            // A leftover PIM `name`/`type` pair means the PSM was not transformed.
            let name = v
                .attribute("psm_var_name")
                .or(v.attribute("name"))
                .ok_or_else(|| structure(v, "missing attribute `psm_var_name`"))?
                .to_string();
            let Some(platform_type) = v.attribute("psm_var_type").filter(|t| !t.is_empty()) else {
                return Err(PsmError::UnresolvedGenericType {
                    path: element_path(v),
                    variable: name,
                });
            };
            let init = match v.attribute("init") {
                Some(t) => Some(expr_at(v, t)?),
                None => None,
            };
            let generic = psm.generic_type(platform_type);
            if let Some(ty) = generic {
                ssa.memory.variables.push(Variable {
                    name: name.clone(),
                    ty,
                    init: init.clone(),
                });
            }
            variables.push(PsmVariable {
                name,
                platform_type: platform_type.to_string(),
                generic,
                init,
            });
        }

        let mut io_actions = Vec::new();
        let io = required(required(node, "iosystem")?, "io_actions")?;
        for a in io.children().filter(|c| c.is_element()) {
            let direction = match a.tag_name().name() {
                "i_action" => IoDirection::Input,
                "o_action" => IoDirection::Output,
                other => return Err(structure(a, format!("unexpected <{other}>"))),
            };
            let mode_text = attr(a, "mode")?;
            let mode = IoMode::parse(mode_text)
                .ok_or_else(|| structure(a, format!("unknown io mode `{mode_text}`")))?;
            io_actions.push(PsmIoAction {
                id: attr(a, "io_id")?.to_string(),
                direction,
                mode,
                subject: expr_at(a, attr(a, "subject")?)?,
                destination: attr(a, "destination")?.to_string(),
                control: a.attribute("control").map(str::to_string),
                statement: attr(a, "statement")?.to_string(),
            });
        }
        psm.automata.push(PsmAutomaton {
            ssa,
            variables,
            io_actions,
        });
    }

    let mut net = FlatNetwork {
        automata: psm.automata.iter().map(|a| a.ssa.clone()).collect(),
        activation_edges: Vec::new(),
    };
    if let Some(h) = first_child(root, "hierarchy") {
        pim_dtd().validate(h, "hierarchy").map_err(PimError::from)?;
    }
    read_hierarchy(root, &mut net)?;
    psm.activation_edges = net.activation_edges;

    if let Some(d) = first_child(root, "dispatcher") {
        let mut disp = DispatcherDoc {
            application: d.attribute("application").map(str::to_string),
            ..DispatcherDoc::default()
        };
        for i in children_named(d, "instance") {
            disp.instances.push(Instance {
                id: attr(i, "instance_id")?.to_string(),
                phsa: attr(i, "phsa_ref")?.to_string(),
            });
        }
        for r in children_named(d, "route") {
            disp.routes.push(Route {
                sender: attr(r, "sender")?.to_string(),
                event: attr(r, "event_ref")?.to_string(),
                receiver: attr(r, "receiver")?.to_string(),
            });
        }
        psm.dispatcher = Some(disp);
    }
    Ok(psm)
}
