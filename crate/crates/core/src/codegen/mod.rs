//! Source generation from a PSM: one class per automaton, the abstract
//! base class, the application dispatcher and small helper classes.

mod emit;
mod lower;
mod runtime;

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ir::FuncAction;
use crate::psm::{parse_psm, PsmDocument, PsmError, TargetSyntax, SUBJECT};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceFile {
    /// Path relative to the output directory, `/`-separated.
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSet {
    pub files: Vec<SourceFile>,
}

impl SourceSet {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.text.as_str())
    }

    /// Writes every file under `dir`, creating directories as needed.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        for f in &self.files {
            let path = dir.join(&f.name);
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, &f.text)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodegenError {
    #[error(transparent)]
    Psm(#[from] PsmError),
    #[error("automaton `{automaton}`: cannot generate `{expr}`: {reason}")]
    UnsupportedExpression {
        automaton: String,
        expr: String,
        reason: String,
    },
    #[error("automaton `{automaton}`: unknown {what}")]
    UnknownReference { automaton: String, what: String },
    #[error("{0}")]
    Identifier(String),
    #[error("PSM names no target syntax; pass one explicitly")]
    NoSyntax,
    #[error("generated file {file} is not well-formed: {message}")]
    Lexical { file: String, message: String },
}

impl CodegenError {
    pub fn code(&self) -> &'static str {
        match self {
            CodegenError::Psm(e) => e.code(),
            CodegenError::UnsupportedExpression { .. } => "unsupported-expression-node",
            CodegenError::UnknownReference { .. } => "dangling-reference",
            CodegenError::Identifier(_) => "invalid-identifier",
            CodegenError::NoSyntax => "usage",
            CodegenError::Lexical { .. } => "lexical-error",
        }
    }
}

/// Identifier used for a state in generated code.
pub fn state_ident(id: &str) -> String {
    id.to_lowercase()
}

/// Method implementing a function action: its declared name, or its id.
pub(crate) fn function_method_name(f: &FuncAction) -> String {
    f.name.clone().unwrap_or_else(|| f.id.to_lowercase())
}

const RESERVED: &[&str] = &[
    "abstract",
    "as",
    "base",
    "bool",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "checked",
    "class",
    "const",
    "continue",
    "decimal",
    "default",
    "delegate",
    "do",
    "double",
    "else",
    "enum",
    "event",
    "explicit",
    "extends",
    "extern",
    "false",
    "final",
    "finally",
    "fixed",
    "float",
    "for",
    "foreach",
    "goto",
    "if",
    "implements",
    "implicit",
    "import",
    "in",
    "instanceof",
    "int",
    "interface",
    "internal",
    "is",
    "lock",
    "long",
    "namespace",
    "native",
    "new",
    "null",
    "object",
    "operator",
    "out",
    "override",
    "package",
    "params",
    "private",
    "protected",
    "public",
    "readonly",
    "ref",
    "return",
    "sbyte",
    "sealed",
    "short",
    "sizeof",
    "static",
    "string",
    "struct",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "true",
    "try",
    "typeof",
    "uint",
    "ulong",
    "unchecked",
    "unsafe",
    "ushort",
    "using",
    "virtual",
    "void",
    "volatile",
    "while",
    // Members of the generated base class.
    "states",
    "events",
    "transitions",
    "children",
    "handler",
    "enabled",
    "deliver",
    "activate",
    "send",
    "ordered",
    "complete",
    "reset",
    "start",
    "find",
    "root",
    "name",
    "state",
    "step",
    "conditionScheme",
    "memory",
    "ioSystem",
];

fn check_ident(s: &str, what: &str) -> Result<(), CodegenError> {
    let mut chars = s.chars();
    let ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok {
        return Err(CodegenError::Identifier(format!(
            "{what} `{s}` is not a valid identifier"
        )));
    }
    if RESERVED.contains(&s) || s.starts_with('_') {
        return Err(CodegenError::Identifier(format!(
            "{what} `{s}` clashes with a reserved name"
        )));
    }
    Ok(())
}

fn check_names(psm: &PsmDocument) -> Result<(), CodegenError> {
    for a in &psm.automata {
        check_ident(&a.ssa.id, "automaton id")?;
        let mut seen = BTreeSet::new();
        for s in &a.ssa.states {
            let ident = state_ident(&s.id);
            check_ident(&ident, "state id")?;
            if !seen.insert(ident.clone()) {
                return Err(CodegenError::Identifier(format!(
                    "automaton `{}`: state ids collide as `{ident}`",
                    a.ssa.id
                )));
            }
        }
        for v in &a.variables {
            check_ident(&v.name, "variable")?;
        }
        for f in &a.ssa.condition_scheme.func_actions {
            let m = function_method_name(f);
            check_ident(&m, "function action")?;
            if !seen.insert(m.clone()) {
                return Err(CodegenError::Identifier(format!(
                    "automaton `{}`: function `{m}` clashes with a state method",
                    a.ssa.id
                )));
            }
        }
    }
    Ok(())
}

/// Generates the source set for `psm` in the given syntax.
pub fn generate(psm: &PsmDocument, syntax: TargetSyntax) -> Result<SourceSet, CodegenError> {
    check_names(psm)?;
    let lang = runtime::Lang::new(syntax, psm);
    let ext = syntax.extension();
    let mut set = SourceSet::default();
    let mut push = |name: String, text: String| -> Result<(), CodegenError> {
        check_lexical(&text).map_err(|message| CodegenError::Lexical {
            file: name.clone(),
            message,
        })?;
        set.files.push(SourceFile { name, text });
        Ok(())
    };
    push(format!("ClassPHSA.{ext}"), runtime::base_class(&lang))?;
    for i in 0..psm.automata.len() {
        let a = &psm.automata[i];
        push(
            format!("Phsa{}.{ext}", a.ssa.id),
            emit::phsa_class(&lang, psm, i)?,
        )?;
    }
    push(format!("Dispatcher.{ext}"), runtime::dispatcher(&lang, psm))?;
    for (name, text) in runtime::helpers(&lang) {
        push(name, text)?;
    }
    Ok(set)
}

/// Parses PSM text and generates sources, using the syntax recorded in
/// the document unless one is given.
pub fn generate_from_text(
    psm_text: &str,
    syntax: Option<TargetSyntax>,
) -> Result<SourceSet, CodegenError> {
    let psm = parse_psm(psm_text)?;
    let syntax = syntax.or(psm.syntax).ok_or(CodegenError::NoSyntax)?;
    generate(&psm, syntax)
}

/// Lexical well-formedness of generated C-family text: brackets balance
/// outside literals and comments, and no template placeholder is left.
pub fn check_lexical(text: &str) -> Result<(), String> {
    if text.contains(SUBJECT) {
        return Err(format!("leftover placeholder {SUBJECT}"));
    }
    let mut stack = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;
    while let Some(c) = chars.next() {
        match c {
            '\n' => line += 1,
            '"' | '\'' => loop {
                match chars.next() {
                    Some('\\') => {
                        chars.next();
                    }
                    Some(q) if q == c => break,
                    Some('\n') | None => return Err(format!("line {line}: unterminated literal")),
                    Some(_) => {}
                }
            },
            '/' if chars.peek() == Some(&'/') => {
                for n in chars.by_ref() {
                    if n == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            '/' if chars.peek() == Some(&'*') => {
                chars.next();
                let mut prev = ' ';
                loop {
                    match chars.next() {
                        Some('/') if prev == '*' => break,
                        Some(n) => {
                            if n == '\n' {
                                line += 1;
                            }
                            prev = n;
                        }
                        None => return Err(format!("line {line}: unterminated comment")),
                    }
                }
            }
            '(' | '[' | '{' => stack.push((c, line)),
            ')' | ']' | '}' => {
                let want = match c {
                    ')' => '(',
                    ']' => '[',
                    _ => '{',
                };
                match stack.pop() {
                    Some((open, _)) if open == want => {}
                    Some((open, at)) => {
                        return Err(format!(
                            "line {line}: `{c}` closes `{open}` opened on line {at}"
                        ))
                    }
                    None => return Err(format!("line {line}: unmatched `{c}`")),
                }
            }
            _ => {}
        }
    }
    match stack.pop() {
        Some((open, at)) => Err(format!("`{open}` opened on line {at} is never closed")),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests;
