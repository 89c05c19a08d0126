use roxmltree::Node;
use thiserror::Error;

use crate::expr::{typecheck, GenericType};
use crate::ir::{Diagnostic, IoAction, IoDirection, IoMode, Ssa};
use crate::pim::{pim_mode, read_dispatcher, read_pim, DispatcherDoc, PimError};
use crate::xml::{children_named, element_path, first_child, parse_document, XmlWriter};

use super::profile::{IoKind, PlatformProfile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Pim(#[from] PimError),
    #[error("automaton `{automaton}`, variable `{variable}`: profile has no mapping for `{ty}`")]
    MissingTypeMapping {
        automaton: String,
        variable: String,
        ty: GenericType,
    },
    #[error("{path}: unknown io mode `{mode}`")]
    UnknownIoMode { path: String, mode: String },
    #[error("automaton `{automaton}`, io `{io}`: {message}")]
    BadIo {
        automaton: String,
        io: String,
        message: String,
    },
    #[error("profile has no `{0}` io template")]
    MissingTemplate(IoKind),
    #[error("dispatcher: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Dispatcher(Vec<Diagnostic>),
}

impl TransformError {
    pub fn code(&self) -> &'static str {
        match self {
            TransformError::Pim(e) => e.code(),
            TransformError::MissingTypeMapping { .. } => "missing-type-mapping",
            TransformError::UnknownIoMode { .. } => "unknown-io-mode",
            TransformError::BadIo { .. } => "invalid-io",
            TransformError::MissingTemplate(_) => "bad-io-template",
            TransformError::Dispatcher(_) => "invalid-dispatcher",
        }
    }
}

fn io_kind(a: &IoAction) -> IoKind {
    match (a.direction, a.mode) {
        (IoDirection::Input, IoMode::Stream) => IoKind::StreamInput,
        (IoDirection::Output, IoMode::Stream) => IoKind::StreamOutput,
        (IoDirection::Input, IoMode::Gui) => IoKind::GuiInput,
        (IoDirection::Output, IoMode::Gui) => IoKind::GuiOutput,
    }
}

/// GUI control used for a value of the given type.
pub(crate) fn control_for(ty: GenericType) -> &'static str {
    match ty {
        GenericType::Flag => "checkbox",
        _ => "textbox",
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Rewrites a PIM document for the platform described by `profile`.
///
/// `automat`, `condscheme` and `hierarchy` are copied from the source text
/// unchanged. Variable types are mapped, each io action gets the platform
/// statement (its `{subject}` placeholder is lowered later, together with
/// the other expressions), and the dispatcher, when given, is embedded.
pub fn transform(
    pim_text: &str,
    dispatcher_text: Option<&str>,
    profile: &PlatformProfile,
) -> Result<String, TransformError> {
    let doc = parse_document(pim_text).map_err(|e| PimError::Malformed(e.to_string()))?;
    let root = doc.root_element();
    for a in root
        .descendants()
        .filter(|n| n.has_tag_name("i_action") || n.has_tag_name("o_action"))
    {
        let mode = a.attribute("mode").unwrap_or_default();
        if IoMode::parse(mode).is_none() {
            return Err(TransformError::UnknownIoMode {
                path: element_path(a),
                mode: mode.to_string(),
            });
        }
    }
    let net = read_pim(pim_text)?;
    let disp = match dispatcher_text {
        Some(t) => {
            let d = read_dispatcher(t)?;
            let errors: Vec<Diagnostic> = d
                .validate(&net)
                .into_iter()
                .filter(|d| !d.code.is_warning())
                .collect();
            if !errors.is_empty() {
                return Err(TransformError::Dispatcher(errors));
            }
            Some(d)
        }
        None => None,
    };
    let verbatim = |n: Node| &pim_text[n.range()];

    let mut w = XmlWriter::new();
    w.declaration(None);
    w.open(
        &profile.root,
        &[
            ("profile", &profile.name),
            ("syntax", profile.syntax.as_str()),
        ],
    );
    if profile.imports.is_empty() {
        w.empty("Imports", &[]);
    } else {
        w.open("Imports", &[]);
        for i in &profile.imports {
            w.text_element("import", &[], i);
        }
        w.close("Imports");
    }
    w.open("FoundationClasses", &[]);
    for (tag, ty) in [
        ("OrderedCollection", GenericType::OrdCollect),
        ("UnorderedCollection", GenericType::UnordCollect),
    ] {
        if let Some(class) = profile.platform_type(ty) {
            w.text_element(tag, &[], class);
        }
    }
    w.close("FoundationClasses");

    for (node, ssa) in children_named(root, "phsa").zip(&net.automata) {
        w.open("phsa", &[("phsa_id", &ssa.id)]);
        let child = |name| first_child(node, name).expect("required by DTD");
        w.raw_fragment(verbatim(child("automat")));
        w.raw_fragment(verbatim(child("condscheme")));
        write_memory(&mut w, ssa, profile)?;
        write_iosystem(&mut w, ssa, profile)?;
        w.close("phsa");
    }
    if let Some(h) = first_child(root, "hierarchy") {
        w.raw_fragment(verbatim(h));
    }
    if let Some(d) = &disp {
        write_dispatcher_element(&mut w, d);
    }
    w.close(&profile.root);
    Ok(w.finish())
}

fn platform<'p>(
    profile: &'p PlatformProfile,
    ssa: &Ssa,
    variable: &str,
    ty: GenericType,
) -> Result<&'p str, TransformError> {
    profile
        .platform_type(ty)
        .ok_or_else(|| TransformError::MissingTypeMapping {
            automaton: ssa.id.clone(),
            variable: variable.to_string(),
            ty,
        })
}

fn write_memory(
    w: &mut XmlWriter,
    ssa: &Ssa,
    profile: &PlatformProfile,
) -> Result<(), TransformError> {
    w.open("memory", &[]);
    if ssa.memory.variables.is_empty() {
        w.empty("variables", &[]);
    } else {
        w.open("variables", &[]);
        for v in &ssa.memory.variables {
            let ty = platform(profile, ssa, &v.name, v.ty)?;
            let init = v.init.as_ref().map(crate::expr::pretty);
            let mut attrs = vec![("psm_var_name", v.name.as_str()), ("psm_var_type", ty)];
            if let Some(i) = &init {
                attrs.push(("init", i));
            }
            w.empty("variable", &attrs);
        }
        w.close("variables");
    }
    w.close("memory");
    Ok(())
}

fn write_iosystem(
    w: &mut XmlWriter,
    ssa: &Ssa,
    profile: &PlatformProfile,
) -> Result<(), TransformError> {
    w.open("iosystem", &[]);
    if ssa.io_table.io_actions.is_empty() {
        w.empty("io_actions", &[]);
    } else {
        w.open("io_actions", &[]);
        for a in &ssa.io_table.io_actions {
            let kind = io_kind(a);
            let template = profile
                .io_templates
                .get(&kind)
                .ok_or(TransformError::MissingTemplate(kind))?;
            let generic =
                typecheck(&a.subject, &ssa.memory).map_err(|e| TransformError::BadIo {
                    automaton: ssa.id.clone(),
                    io: a.id.clone(),
                    message: e.to_string(),
                })?;
            let subject = crate::expr::pretty(&a.subject);
            let ty = platform(profile, ssa, &subject, generic)?;
            let statement = template
                .replace("{type}", ty)
                .replace("{Type}", &capitalize(ty))
                .replace("{destination}", &a.destination);
            let name = match a.direction {
                IoDirection::Input => "i_action",
                IoDirection::Output => "o_action",
            };
            let mut attrs = vec![
                ("io_id", a.id.as_str()),
                ("mode", pim_mode(a.mode)),
                ("subject", &subject),
                ("destination", &a.destination),
            ];
            if a.mode == IoMode::Gui {
                attrs.push(("control", control_for(generic)));
            }
            attrs.push(("statement", &statement));
            w.empty(name, &attrs);
        }
        w.close("io_actions");
    }
    w.close("iosystem");
    Ok(())
}

fn write_dispatcher_element(w: &mut XmlWriter, d: &DispatcherDoc) {
    let attrs: Vec<(&str, &str)> = d
        .application
        .as_deref()
        .map(|a| vec![("application", a)])
        .unwrap_or_default();
    if d.instances.is_empty() && d.routes.is_empty() {
        w.empty("dispatcher", &attrs);
        return;
    }
    w.open("dispatcher", &attrs);
    for i in &d.instances {
        w.empty("instance", &[("instance_id", &i.id), ("phsa_ref", &i.phsa)]);
    }
    for r in &d.routes {
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
}
