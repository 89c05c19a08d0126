use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::GenericType;
use crate::xml::{element_path, parse_document, text_of};

pub const SUBJECT: &str = "{subject}";
const PLACEHOLDERS: [&str; 4] = ["{subject}", "{type}", "{Type}", "{destination}"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IoKind {
    StreamInput,
    StreamOutput,
    GuiInput,
    GuiOutput,
}

impl IoKind {
    pub const ALL: [IoKind; 4] = [
        IoKind::StreamInput,
        IoKind::StreamOutput,
        IoKind::GuiInput,
        IoKind::GuiOutput,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IoKind::StreamInput => "stream-input",
            IoKind::StreamOutput => "stream-output",
            IoKind::GuiInput => "gui-input",
            IoKind::GuiOutput => "gui-output",
        }
    }

    pub fn parse(s: &str) -> Option<IoKind> {
        IoKind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for IoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Concrete syntax family of generated code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TargetSyntax {
    JavaLike,
    CSharpLike,
}

impl TargetSyntax {
    pub fn as_str(self) -> &'static str {
        match self {
            TargetSyntax::JavaLike => "java",
            TargetSyntax::CSharpLike => "csharp",
        }
    }

    pub fn parse(s: &str) -> Option<TargetSyntax> {
        match s {
            "java" | "java-like" => Some(TargetSyntax::JavaLike),
            "csharp" | "csharp-like" | "c#" => Some(TargetSyntax::CSharpLike),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            TargetSyntax::JavaLike => "java",
            TargetSyntax::CSharpLike => "cs",
        }
    }
}

/// Declarative mapping from generic PIM constructs to one platform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlatformProfile {
    pub name: String,
    /// Document element of PSMs for this platform, e.g. `psm_j2ee`.
    pub root: String,
    pub syntax: TargetSyntax,
    pub imports: Vec<String>,
    /// Platform type per generic type; collection entries double as the
    /// foundation collection classes.
    pub types: BTreeMap<GenericType, String>,
    pub io_templates: BTreeMap<IoKind, String>,
}

impl PlatformProfile {
    pub fn platform_type(&self, ty: GenericType) -> Option<&str> {
        self.types.get(&ty).map(String::as_str)
    }

    pub fn ordered_collection(&self) -> Option<&str> {
        self.platform_type(GenericType::OrdCollect)
    }

    pub fn unordered_collection(&self) -> Option<&str> {
        self.platform_type(GenericType::UnordCollect)
    }

    /// Checks completeness: every generic type mapped, every template
    /// present with exactly one subject placeholder.
    pub fn check(&self) -> Result<(), ProfileError> {
        for ty in GenericType::ALL {
            if !self.types.contains_key(&ty) {
                return Err(ProfileError::MissingTypeMapping(ty.as_str().into()));
            }
        }
        for kind in IoKind::ALL {
            let t = self
                .io_templates
                .get(&kind)
                .ok_or(ProfileError::MissingTemplate(kind))?;
            check_template(kind, t)?;
        }
        Ok(())
    }
}

fn check_template(kind: IoKind, t: &str) -> Result<(), ProfileError> {
    let bad = |message: String| ProfileError::BadTemplate { kind, message };
    let count = t.matches(SUBJECT).count();
    if count != 1 {
        return Err(bad(format!(
            "expected exactly one {SUBJECT}, found {count}"
        )));
    }
    let mut rest = t;
    while let Some(start) = rest.find('{') {
        let tail = &rest[start..];
        match PLACEHOLDERS.iter().find(|p| tail.starts_with(**p)) {
            Some(p) => rest = &tail[p.len()..],
            None => {
                // Braces of the target language are fine unless they look
                // like a placeholder.
                let word: String = tail[1..]
                    .chars()
                    .take_while(|c| c.is_alphanumeric() || *c == '_')
                    .collect();
                if !word.is_empty() && tail[1 + word.len()..].starts_with('}') {
                    return Err(bad(format!("unknown placeholder {{{word}}}")));
                }
                rest = &tail[1..];
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("malformed profile {origin}: {message}")]
    Malformed { origin: String, message: String },
    #[error("profile has no mapping for generic type `{0}`")]
    MissingTypeMapping(String),
    #[error("profile has no `{0}` io template")]
    MissingTemplate(IoKind),
    #[error("io template `{kind}`: {message}")]
    BadTemplate { kind: IoKind, message: String },
    #[error("include cycle: {}", .0.join(" -> "))]
    IncludeCycle(Vec<String>),
    #[error("cannot read included profile `{name}`: {message}")]
    Include { name: String, message: String },
}

impl ProfileError {
    pub fn code(&self) -> &'static str {
        match self {
            ProfileError::Malformed { .. } => "malformed-profile",
            ProfileError::MissingTypeMapping(_) => "missing-type-mapping",
            ProfileError::MissingTemplate(_) | ProfileError::BadTemplate { .. } => {
                "bad-io-template"
            }
            ProfileError::IncludeCycle(_) => "include-cycle",
            ProfileError::Include { .. } => "include-not-found",
        }
    }
}

#[derive(Default)]
struct Partial {
    name: Option<String>,
    root: Option<String>,
    syntax: Option<TargetSyntax>,
    imports: Vec<String>,
    types: BTreeMap<GenericType, String>,
    io_templates: BTreeMap<IoKind, String>,
}

/// Loads a profile whose includes are fetched through `resolve`, which maps
/// an include reference (relative to the including file's name) to a
/// `(canonical name, text)` pair.
pub fn load_profile_with<F>(
    text: &str,
    origin: &str,
    resolve: &F,
) -> Result<PlatformProfile, ProfileError>
where
    F: Fn(&str, &str) -> Result<(String, String), String>,
{
    let mut acc = Partial::default();
    let mut stack = vec![origin.to_string()];
    apply(text, origin, resolve, &mut stack, &mut acc)?;
    let origin_err = |message: &str| ProfileError::Malformed {
        origin: origin.into(),
        message: message.into(),
    };
    let profile = PlatformProfile {
        name: acc
            .name
            .ok_or_else(|| origin_err("missing `name` attribute"))?,
        root: acc
            .root
            .ok_or_else(|| origin_err("missing `root` attribute"))?,
        syntax: acc
            .syntax
            .ok_or_else(|| origin_err("missing `syntax` attribute"))?,
        imports: acc.imports,
        types: acc.types,
        io_templates: acc.io_templates,
    };
    profile.check()?;
    Ok(profile)
}

/// Loads a profile from its text. Includes are resolved against
/// `base_dir` on the file system.
pub fn load_profile(text: &str, base_dir: Option<&Path>) -> Result<PlatformProfile, ProfileError> {
    let base = base_dir
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    let origin = base.join("<profile>");
    load_profile_with(text, &origin.to_string_lossy(), &fs_resolver)
}

pub fn load_profile_file(path: &Path) -> Result<PlatformProfile, ProfileError> {
    let (name, text) =
        fs_resolver(".", &path.to_string_lossy()).map_err(|message| ProfileError::Include {
            name: path.display().to_string(),
            message,
        })?;
    load_profile_with(&text, &name, &fs_resolver)
}

fn fs_resolver(from: &str, href: &str) -> Result<(String, String), String> {
    let base = Path::new(from).parent().unwrap_or(Path::new("."));
    let path = base.join(href);
    let canonical = path.canonicalize().map_err(|e| e.to_string())?;
    let text = std::fs::read_to_string(&canonical).map_err(|e| e.to_string())?;
    Ok((canonical.to_string_lossy().into_owned(), text))
}

fn apply<F>(
    text: &str,
    origin: &str,
    resolve: &F,
    stack: &mut Vec<String>,
    acc: &mut Partial,
) -> Result<(), ProfileError>
where
    F: Fn(&str, &str) -> Result<(String, String), String>,
{
    let malformed = |message: String| ProfileError::Malformed {
        origin: origin.into(),
        message,
    };
    let doc = parse_document(text).map_err(|e| malformed(e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != "profile" {
        return Err(malformed(format!(
            "expected <profile>, found <{}>",
            root.tag_name().name()
        )));
    }
    let required = |node: roxmltree::Node, name: &str| {
        node.attribute(name).map(str::to_string).ok_or_else(|| {
            malformed(format!(
                "{}: missing attribute `{name}`",
                element_path(node)
            ))
        })
    };

    // Includes first, so that this file's own definitions win.
    for inc in root.children().filter(|c| c.has_tag_name("include")) {
        let href = required(inc, "href")?;
        let (name, inc_text) = resolve(origin, &href).map_err(|message| ProfileError::Include {
            name: href.clone(),
            message,
        })?;
        if let Some(pos) = stack.iter().position(|s| *s == name) {
            let mut cycle = stack[pos..].to_vec();
            cycle.push(name);
            return Err(ProfileError::IncludeCycle(cycle));
        }
        stack.push(name.clone());
        apply(&inc_text, &name, resolve, stack, acc)?;
        stack.pop();
    }

    if let Some(n) = root.attribute("name") {
        acc.name = Some(n.into());
    }
    if let Some(r) = root.attribute("root") {
        acc.root = Some(r.into());
    }
    if let Some(s) = root.attribute("syntax") {
        acc.syntax =
            Some(TargetSyntax::parse(s).ok_or_else(|| malformed(format!("unknown syntax `{s}`")))?);
    }
    for el in root.children().filter(|c| c.is_element()) {
        match el.tag_name().name() {
            "include" => {}
            "import" => {
                let i = text_of(el).trim().to_string();
                if !acc.imports.contains(&i) {
                    acc.imports.push(i);
                }
            }
            "type" => {
                let g = required(el, "generic")?;
                let ty = GenericType::parse(&g)
                    .ok_or_else(|| malformed(format!("unknown generic type `{g}`")))?;
                acc.types.insert(ty, required(el, "platform")?);
            }
            "io" => {
                let k = required(el, "kind")?;
                let kind =
                    IoKind::parse(&k).ok_or_else(|| malformed(format!("unknown io kind `{k}`")))?;
                let template = text_of(el).trim().to_string();
                check_template(kind, &template)?;
                acc.io_templates.insert(kind, template);
            }
            other => return Err(malformed(format!("unknown element <{other}>"))),
        }
    }
    Ok(())
}
