//! End-to-end helpers: statechart files to flat network, PIM, PSM and
//! generated sources.

use thiserror::Error;

use crate::codegen::{generate, CodegenError, SourceSet};
use crate::frontend::{parse_statechart, synthesize_ssa, ChartFormat, FrontendError};
use crate::ir::{flatten_hierarchy, validate_network, Diagnostic, FlatNetwork, FlattenError};
use crate::pim::write_pim_document;
use crate::psm::{parse_psm, transform, PlatformProfile, PsmError, TransformError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("{file}: {source}")]
    Frontend {
        file: String,
        #[source]
        source: FrontendError,
    },
    #[error("{file}: {source}")]
    Flatten {
        file: String,
        #[source]
        source: FlattenError,
    },
    #[error("automata ids clash: `{0}` is defined by more than one chart")]
    DuplicateAutomaton(String),
    #[error("network is invalid: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Psm(#[from] PsmError),
    #[error(transparent)]
    Codegen(#[from] CodegenError),
}

impl PipelineError {
    pub fn code(&self) -> &'static str {
        match self {
            PipelineError::Frontend { source, .. } => source.code(),
            PipelineError::Flatten { source, .. } => source.code(),
            PipelineError::DuplicateAutomaton(_) => "duplicate-automaton",
            PipelineError::Invalid(d) => d
                .first()
                .map(|d| d.code.as_str())
                .unwrap_or("invalid-model"),
            PipelineError::Transform(e) => e.code(),
            PipelineError::Psm(e) => e.code(),
            PipelineError::Codegen(e) => e.code(),
        }
    }
}

/// A named input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Input {
    pub name: String,
    pub text: String,
}

impl Input {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        Input {
            name: name.into(),
            text: text.into(),
        }
    }
}

/// A joined network with the warnings met on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Built {
    pub net: FlatNetwork,
    pub warnings: Vec<Diagnostic>,
}

/// Reads and flattens each chart, then joins them into one network.
pub fn build_network(charts: &[Input]) -> Result<FlatNetwork, PipelineError> {
    build_network_with(charts, None).map(|b| b.net)
}

/// Like [`build_network`]; `format` overrides detection from the document
/// element.
pub fn build_network_with(
    charts: &[Input],
    format: Option<ChartFormat>,
) -> Result<Built, PipelineError> {
    let mut parts = Vec::with_capacity(charts.len());
    let mut warnings = Vec::new();
    for c in charts {
        let frontend = |source| PipelineError::Frontend {
            file: c.name.clone(),
            source,
        };
        let format = format.unwrap_or_else(|| ChartFormat::detect(&c.text));
        let doc = parse_statechart(&c.text, format).map_err(frontend)?;
        warnings.extend(doc.warnings.iter().cloned());
        let hsa = synthesize_ssa(&doc).map_err(frontend)?;
        let flat = flatten_hierarchy(&hsa).map_err(|source| PipelineError::Flatten {
            file: c.name.clone(),
            source,
        })?;
        parts.push(flat);
    }
    let net = FlatNetwork::merge(parts);
    for (i, a) in net.automata.iter().enumerate() {
        if net.automata[..i].iter().any(|b| b.id == a.id) {
            return Err(PipelineError::DuplicateAutomaton(a.id.clone()));
        }
    }
    let (errors, rest): (Vec<Diagnostic>, Vec<Diagnostic>) = validate_network(&net)
        .into_iter()
        .partition(|d| !d.code.is_warning());
    if !errors.is_empty() {
        return Err(PipelineError::Invalid(errors));
    }
    warnings.extend(rest);
    Ok(Built { net, warnings })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub pim: String,
    pub psm: String,
    pub sources: SourceSet,
}

/// Runs every stage: charts to PIM, PIM to PSM under `profile`, PSM to
/// source text in the profile's syntax.
pub fn run(
    charts: &[Input],
    dispatcher: Option<&str>,
    profile: &PlatformProfile,
) -> Result<Artifacts, PipelineError> {
    let net = build_network(charts)?;
    let pim = write_pim_document(&net);
    let psm = transform(&pim, dispatcher, profile)?;
    let sources = generate(&parse_psm(&psm)?, profile.syntax)?;
    Ok(Artifacts { pim, psm, sources })
}
