//! A DTD subset: element content models and attribute lists, enough to
//! validate the documents exchanged between pipeline stages.
//!
//! Supported declarations are `<!ELEMENT>` (EMPTY, ANY, `(#PCDATA)`, mixed
//! content and children models with `? * +`) and `<!ATTLIST>` (CDATA, ID,
//! IDREF, NMTOKEN, enumerations; `#REQUIRED`, `#IMPLIED`, `#FIXED` and
//! literal defaults). Entities and notations are not supported.

use std::collections::{BTreeMap, BTreeSet};

use roxmltree::Node;
use thiserror::Error;

use crate::xml::{element_path, text_of};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DtdError {
    #[error("DTD syntax error near `{0}`")]
    Syntax(String),
    #[error("{path}: {message}")]
    Violation { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repeat {
    One,
    Optional,
    Star,
    Plus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Particle {
    Name(String, Repeat),
    Seq(Vec<Particle>, Repeat),
    Choice(Vec<Particle>, Repeat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum ContentModel {
    Empty,
    Any,
    /// `(#PCDATA | a | b)*`; an empty list is plain `(#PCDATA)`.
    Mixed(Vec<String>),
    Children(Particle),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum AttrType {
    Cdata,
    Enumerated(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum AttrDefault {
    Required,
    Implied,
    Fixed(String),
    Value(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct AttrDecl {
    ty: AttrType,
    default: AttrDefault,
}

/// A parsed document type definition.
#[derive(Debug, Clone, Default)]
pub struct Dtd {
    elements: BTreeMap<String, ContentModel>,
    attributes: BTreeMap<String, BTreeMap<String, AttrDecl>>,
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        loop {
            let r = self.rest();
            let trimmed = r.trim_start();
            self.pos += r.len() - trimmed.len();
            if trimmed.starts_with("<!--") {
                match trimmed.find("-->") {
                    Some(end) => self.pos += end + 3,
                    None => self.pos = self.s.len(),
                }
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), DtdError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn error(&self) -> DtdError {
        DtdError::Syntax(self.rest().chars().take(40).collect())
    }

    fn name(&mut self) -> Result<String, DtdError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '#')))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error());
        }
        let n = self.rest()[..len].to_string();
        self.pos += len;
        Ok(n)
    }

    fn quoted(&mut self) -> Result<String, DtdError> {
        self.skip_ws();
        let q = self.rest().chars().next().ok_or_else(|| self.error())?;
        if q != '"' && q != '\'' {
            return Err(self.error());
        }
        let body = &self.rest()[1..];
        let end = body.find(q).ok_or_else(|| self.error())?;
        let v = body[..end].to_string();
        self.pos += end + 2;
        Ok(v)
    }

    fn repeat(&mut self) -> Repeat {
        match self.rest().chars().next() {
            Some('?') => {
                self.pos += 1;
                Repeat::Optional
            }
            Some('*') => {
                self.pos += 1;
                Repeat::Star
            }
            Some('+') => {
                self.pos += 1;
                Repeat::Plus
            }
            _ => Repeat::One,
        }
    }

    fn particle(&mut self) -> Result<Particle, DtdError> {
        self.skip_ws();
        if self.eat("(") {
            let mut items = vec![self.particle()?];
            let mut sep = None;
            loop {
                self.skip_ws();
                if self.eat(")") {
                    break;
                }
                let s = if self.eat(",") {
                    ','
                } else if self.eat("|") {
                    '|'
                } else {
                    return Err(self.error());
                };
                if sep.is_some_and(|p| p != s) {
                    return Err(self.error());
                }
                sep = Some(s);
                items.push(self.particle()?);
            }
            let rep = self.repeat();
            Ok(if sep == Some('|') {
                Particle::Choice(items, rep)
            } else {
                Particle::Seq(items, rep)
            })
        } else {
            let n = self.name()?;
            let rep = self.repeat();
            Ok(Particle::Name(n, rep))
        }
    }
}

impl Dtd {
    pub fn parse(text: &str) -> Result<Dtd, DtdError> {
        let mut dtd = Dtd::default();
        let mut c = Cursor { s: text, pos: 0 };
        loop {
            c.skip_ws();
            if c.rest().is_empty() {
                break;
            }
            if c.eat("<!ELEMENT") {
                let name = c.name()?;
                c.skip_ws();
                let model = if c.eat("EMPTY") {
                    ContentModel::Empty
                } else if c.eat("ANY") {
                    ContentModel::Any
                } else if c
                    .rest()
                    .replace(char::is_whitespace, "")
                    .starts_with("(#PCDATA")
                {
                    c.expect("(")?;
                    c.expect("#PCDATA")?;
                    let mut names = Vec::new();
                    while c.eat("|") {
                        names.push(c.name()?);
                    }
                    c.expect(")")?;
                    let star = c.eat("*");
                    if !names.is_empty() && !star {
                        return Err(c.error());
                    }
                    ContentModel::Mixed(names)
                } else {
                    ContentModel::Children(c.particle()?)
                };
                c.expect(">")?;
                dtd.elements.insert(name, model);
            } else if c.eat("<!ATTLIST") {
                let elem = c.name()?;
                let attrs = dtd.attributes.entry(elem).or_default();
                loop {
                    c.skip_ws();
                    if c.eat(">") {
                        break;
                    }
                    let attr = c.name()?;
                    c.skip_ws();
                    let ty = if c.eat("(") {
                        let mut vals = vec![c.name()?];
                        while c.eat("|") {
                            vals.push(c.name()?);
                        }
                        c.expect(")")?;
                        AttrType::Enumerated(vals)
                    } else {
                        let t = c.name()?;
                        match t.as_str() {
                            "CDATA" | "ID" | "IDREF" | "IDREFS" | "NMTOKEN" | "NMTOKENS" => {
                                AttrType::Cdata
                            }
                            _ => return Err(DtdError::Syntax(t)),
                        }
                    };
                    c.skip_ws();
                    let default = if c.eat("#REQUIRED") {
                        AttrDefault::Required
                    } else if c.eat("#IMPLIED") {
                        AttrDefault::Implied
                    } else if c.eat("#FIXED") {
                        AttrDefault::Fixed(c.quoted()?)
                    } else {
                        AttrDefault::Value(c.quoted()?)
                    };
                    attrs.insert(attr, AttrDecl { ty, default });
                }
            } else {
                return Err(c.error());
            }
        }
        Ok(dtd)
    }

    /// Validates the tree under `root` (which must be the document element).
    pub fn validate(&self, root: Node, expected_root: &str) -> Result<(), DtdError> {
        if root.tag_name().name() != expected_root {
            return Err(DtdError::Violation {
                path: element_path(root),
                message: format!("document element must be <{expected_root}>"),
            });
        }
        self.validate_element(root)
    }

    fn validate_element(&self, node: Node) -> Result<(), DtdError> {
        let name = node.tag_name().name();
        let violation = |message: String| DtdError::Violation {
            path: element_path(node),
            message,
        };
        let model = self
            .elements
            .get(name)
            .ok_or_else(|| violation(format!("element <{name}> is not declared")))?;

        let empty = BTreeMap::new();
        let decls = self.attributes.get(name).unwrap_or(&empty);
        for attr in node.attributes() {
            if attr.namespace().is_some() {
                continue;
            }
            let decl = decls
                .get(attr.name())
                .ok_or_else(|| violation(format!("attribute `{}` is not declared", attr.name())))?;
            if let AttrType::Enumerated(vals) = &decl.ty {
                if !vals.iter().any(|v| v == attr.value()) {
                    return Err(violation(format!(
                        "attribute `{}` must be one of {}",
                        attr.name(),
                        vals.join("|")
                    )));
                }
            }
            if let AttrDefault::Fixed(v) = &decl.default {
                if v != attr.value() {
                    return Err(violation(format!(
                        "attribute `{}` is fixed to `{v}`",
                        attr.name()
                    )));
                }
            }
        }
        for (attr, decl) in decls {
            if decl.default == AttrDefault::Required && node.attribute(attr.as_str()).is_none() {
                return Err(violation(format!("missing required attribute `{attr}`")));
            }
        }

        let children: Vec<&str> = node
            .children()
            .filter(|c| c.is_element())
            .map(|c| c.tag_name().name())
            .collect();
        let has_text = !text_of(node).trim().is_empty();
        match model {
            ContentModel::Empty => {
                if !children.is_empty() || has_text {
                    return Err(violation(format!("<{name}> must be empty")));
                }
            }
            ContentModel::Any => {}
            ContentModel::Mixed(allowed) => {
                if let Some(bad) = children.iter().find(|c| !allowed.iter().any(|a| a == *c)) {
                    return Err(violation(format!("<{bad}> is not allowed in <{name}>")));
                }
            }
            ContentModel::Children(particle) => {
                if has_text {
                    return Err(violation(format!("<{name}> must not contain text")));
                }
                if !matches(particle, &children, 0).contains(&children.len()) {
                    return Err(violation(format!(
                        "children ({}) do not match the content model of <{name}>",
                        children.join(", ")
                    )));
                }
            }
        }
        for child in node.children().filter(|c| c.is_element()) {
            self.validate_element(child)?;
        }
        Ok(())
    }
}

type Step<'a> = Box<dyn Fn(usize) -> BTreeSet<usize> + 'a>;

/// End positions reachable by matching `p` against `names` from `start`.
fn matches(p: &Particle, names: &[&str], start: usize) -> BTreeSet<usize> {
    let (rep, once): (&Repeat, Step) = match p {
        Particle::Name(n, rep) => (
            rep,
            Box::new(move |i: usize| {
                if names.get(i) == Some(&n.as_str()) {
                    BTreeSet::from([i + 1])
                } else {
                    BTreeSet::new()
                }
            }),
        ),
        Particle::Seq(items, rep) => (
            rep,
            Box::new(move |i: usize| {
                let mut cur = BTreeSet::from([i]);
                for item in items {
                    cur = cur.iter().flat_map(|&j| matches(item, names, j)).collect();
                }
                cur
            }),
        ),
        Particle::Choice(items, rep) => (
            rep,
            Box::new(move |i: usize| {
                items
                    .iter()
                    .flat_map(|item| matches(item, names, i))
                    .collect()
            }),
        ),
    };
    match rep {
        Repeat::One => once(start),
        Repeat::Optional => {
            let mut r = once(start);
            r.insert(start);
            r
        }
        Repeat::Star | Repeat::Plus => {
            let mut reached = BTreeSet::new();
            let mut frontier = once(start);
            while !frontier.is_empty() {
                let fresh: BTreeSet<usize> = frontier.difference(&reached).copied().collect();
                reached.extend(fresh.iter().copied());
                frontier = fresh
                    .iter()
                    .flat_map(|&j| once(j))
                    .filter(|j| !reached.contains(j))
                    .collect();
            }
            if *rep == Repeat::Star {
                reached.insert(start);
            }
            reached
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DTD: &str = r#"
        <!-- sample -->
        <!ELEMENT doc (head?, item*, tail)>
        <!ELEMENT head (#PCDATA)>
        <!ELEMENT item (a | b)+>
        <!ELEMENT a EMPTY>
        <!ELEMENT b EMPTY>
        <!ELEMENT tail EMPTY>
        <!ATTLIST item id CDATA #REQUIRED
                       kind (x|y) "x">
    "#;

    fn check(xml: &str) -> Result<(), DtdError> {
        let dtd = Dtd::parse(DTD).unwrap();
        let doc = roxmltree::Document::parse(xml).unwrap();
        dtd.validate(doc.root_element(), "doc")
    }

    #[test]
    fn accepts_conforming_documents() {
        check("<doc><tail/></doc>").unwrap();
        check("<doc><head>hi</head><item id='1'><a/><b/><a/></item><tail/></doc>").unwrap();
        check("<doc><item id='1' kind='y'><b/></item><item id='2'><a/></item><tail/></doc>")
            .unwrap();
    }

    #[test]
    fn rejects_violations() {
        let cases = [
            "<doc/>",
            "<doc><tail/><head/></doc>",
            "<doc><item><a/></item><tail/></doc>",
            "<doc><item id='1'></item><tail/></doc>",
            "<doc><item id='1' kind='z'><a/></item><tail/></doc>",
            "<doc><tail>text</tail></doc>",
            "<doc><tail/><extra/></doc>",
            "<other/>",
        ];
        for xml in cases {
            assert!(check(xml).is_err(), "{xml}");
        }
        let err = check("<doc><item id='1'><c/></item><tail/></doc>").unwrap_err();
        assert!(err.to_string().starts_with("/doc/item"), "{err}");
    }
}
