//! Statechart ingestion: native XML and an XMI subset are read into a
//! [`StatechartDoc`], from which SSA component tables are synthesized.

mod native;
mod synth;
mod tables;
mod xmi;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ir::Diagnostic;

pub use synth::synthesize_ssa;
pub use tables::render_tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChartFormat {
    Native,
    Xmi,
}

impl ChartFormat {
    /// Picks the format from the document element name.
    pub fn detect(text: &str) -> ChartFormat {
        let head = text.trim_start();
        let mut rest = head;
        // Skip declarations, comments and doctype.
        while let Some(stripped) = rest.strip_prefix("<?").or_else(|| rest.strip_prefix("<!")) {
            rest = stripped
                .find('>')
                .map(|i| stripped[i + 1..].trim_start())
                .unwrap_or("");
        }
        let name: String = rest
            .trim_start_matches('<')
            .chars()
            .take_while(|c| !c.is_whitespace() && *c != '>' && *c != '/')
            .collect();
        if name == "XMI" || name.ends_with(":XMI") {
            ChartFormat::Xmi
        } else {
            ChartFormat::Native
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarDecl {
    pub name: String,
    pub ty: String,
    pub init: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuncDecl {
    pub name: String,
    /// Statement text; `None` for routines implemented outside the model.
    pub body: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventDecl {
    pub id: String,
    pub description: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IoDecl {
    pub id: String,
    pub direction: String,
    pub mode: String,
    pub subject: String,
    pub destination: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartState {
    pub name: String,
    pub initial: bool,
    pub is_final: bool,
    /// Raw entry-action texts in declaration order.
    pub entry: Vec<String>,
    /// Sub-chart refining this state.
    pub sub: Option<Box<Chart>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartTransition {
    pub source: String,
    pub target: String,
    pub event: Option<String>,
    pub guard: Option<String>,
    pub action: Option<String>,
}

impl ChartTransition {
    pub fn label(&self) -> String {
        let mut s = format!("{} -> {}", self.source, self.target);
        if let Some(e) = &self.event {
            s.push_str(&format!(" on {e}"));
        }
        s
    }
}

/// One state diagram with its declarations. Texts are raw and unparsed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chart {
    pub id: String,
    pub variables: Vec<VarDecl>,
    pub functions: Vec<FuncDecl>,
    pub events: Vec<EventDecl>,
    pub io: Vec<IoDecl>,
    pub states: Vec<ChartState>,
    pub transitions: Vec<ChartTransition>,
}

impl Chart {
    fn new(id: impl Into<String>) -> Chart {
        Chart {
            id: id.into(),
            variables: Vec::new(),
            functions: Vec::new(),
            events: Vec::new(),
            io: Vec::new(),
            states: Vec::new(),
            transitions: Vec::new(),
        }
    }

    /// Number of charts in this tree.
    pub fn chart_count(&self) -> usize {
        1 + self
            .states
            .iter()
            .filter_map(|s| s.sub.as_ref())
            .map(|c| c.chart_count())
            .sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatechartDoc {
    pub root: Chart,
    /// Unknown elements that were skipped.
    pub warnings: Vec<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrontendError {
    #[error("malformed XML: {0}")]
    Malformed(String),
    #[error("{path}: missing attribute `{attr}`")]
    MissingAttribute { path: String, attr: String },
    #[error("chart `{0}` has no initial state")]
    MissingInitial(String),
    #[error("chart `{chart}` has several initial states: {}", states.join(", "))]
    AmbiguousInitial { chart: String, states: Vec<String> },
    #[error("chart `{0}` has no final state")]
    MissingFinal(String),
    #[error("chart `{chart}`: state `{name}` declared twice")]
    DuplicateState { chart: String, name: String },
    #[error("chart `{chart}`, transition {transition}: unknown state `{name}`")]
    UnknownState {
        chart: String,
        transition: String,
        name: String,
    },
    #[error("chart `{chart}`, transition {transition}: transition actions are not supported, move them into the target state's entry actions")]
    TransitionAction { chart: String, transition: String },
    #[error("{location}: {message}")]
    Expression { location: String, message: String },
    #[error("chart `{chart}`, variable `{variable}`: unknown type `{ty}`")]
    UnknownType {
        chart: String,
        variable: String,
        ty: String,
    },
    #[error("chart `{chart}`, io `{io}`: {message}")]
    BadIo {
        chart: String,
        io: String,
        message: String,
    },
    #[error("composite states do not form a tree: chart id `{0}` used more than once")]
    NonTreeComposites(String),
    #[error("synthesized automata are invalid: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
}

impl FrontendError {
    pub fn code(&self) -> &'static str {
        match self {
            FrontendError::Malformed(_) => "malformed-xml",
            FrontendError::MissingAttribute { .. } => "malformed-statechart",
            FrontendError::MissingInitial(_) => "missing-initial-state",
            FrontendError::AmbiguousInitial { .. } => "ambiguous-initial-state",
            FrontendError::MissingFinal(_) => "missing-final-state",
            FrontendError::DuplicateState { .. } => "duplicate-state",
            FrontendError::UnknownState { .. } => "unresolved-state",
            FrontendError::TransitionAction { .. } => "transition-action",
            FrontendError::Expression { .. } => "expression-parse-error",
            FrontendError::UnknownType { .. } => "unknown-type",
            FrontendError::BadIo { .. } => "invalid-io",
            FrontendError::NonTreeComposites(_) => "non-tree-composites",
            FrontendError::Invalid(_) => "invalid-model",
        }
    }
}

/// Reads a statechart document, discarding presentation data.
pub fn parse_statechart(text: &str, format: ChartFormat) -> Result<StatechartDoc, FrontendError> {
    let doc =
        crate::xml::parse_document(text).map_err(|e| FrontendError::Malformed(e.to_string()))?;
    let parsed = match format {
        ChartFormat::Native => native::parse(&doc)?,
        ChartFormat::Xmi => xmi::parse(&doc)?,
    };
    check_markers(&parsed.root)?;
    Ok(parsed)
}

fn check_markers(chart: &Chart) -> Result<(), FrontendError> {
    let initial: Vec<String> = chart
        .states
        .iter()
        .filter(|s| s.initial)
        .map(|s| s.name.clone())
        .collect();
    match initial.len() {
        0 => return Err(FrontendError::MissingInitial(chart.id.clone())),
        1 => {}
        _ => {
            return Err(FrontendError::AmbiguousInitial {
                chart: chart.id.clone(),
                states: initial,
            })
        }
    }
    if !chart.states.iter().any(|s| s.is_final) {
        return Err(FrontendError::MissingFinal(chart.id.clone()));
    }
    for (i, s) in chart.states.iter().enumerate() {
        if chart.states[..i].iter().any(|o| o.name == s.name) {
            return Err(FrontendError::DuplicateState {
                chart: chart.id.clone(),
                name: s.name.clone(),
            });
        }
        if let Some(sub) = &s.sub {
            check_markers(sub)?;
        }
    }
    Ok(())
}

/// Default names for unnamed pseudo-states: `S0` for the initial one,
/// `End` (then `End2`, `End3`, ...) for final ones.
pub(crate) fn pseudo_state_name(initial: bool, taken: &[ChartState]) -> String {
    let base = if initial { "S0" } else { "End" };
    let mut name = base.to_string();
    let mut n = 1;
    while taken.iter().any(|s| s.name == name) {
        n += 1;
        name = format!("{base}{n}");
    }
    name
}

#[cfg(test)]
mod tests;
