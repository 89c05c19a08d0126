//! Deterministic XML emission and small helpers over `roxmltree`.

use roxmltree::Node;

pub(crate) fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\n' => out.push_str("&#10;"),
            '\t' => out.push_str("&#9;"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
    out
}

/// Pretty-printing writer with a fixed two-space indent. Attribute order is
/// the order given by the caller, so output is byte-stable.
pub(crate) struct XmlWriter {
    out: String,
    depth: usize,
}

impl XmlWriter {
    pub fn new() -> Self {
        XmlWriter {
            out: String::new(),
            depth: 0,
        }
    }

    pub fn declaration(&mut self, standalone: Option<&str>) {
        self.out
            .push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"");
        if let Some(s) = standalone {
            self.out.push_str(&format!(" standalone=\"{s}\""));
        }
        self.out.push_str("?>\n");
    }

    pub fn doctype(&mut self, root: &str, system: &str) {
        self.out
            .push_str(&format!("<!DOCTYPE {root} SYSTEM \"{system}\">\n"));
    }

    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
    }

    fn tag(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.indent();
        self.out.push('<');
        self.out.push_str(name);
        for (k, v) in attrs {
            self.out.push(' ');
            self.out.push_str(k);
            self.out.push_str("=\"");
            self.out.push_str(&escape_attr(v));
            self.out.push('"');
        }
    }

    pub fn open(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.tag(name, attrs);
        self.out.push_str(">\n");
        self.depth += 1;
    }

    pub fn close(&mut self, name: &str) {
        self.depth -= 1;
        self.indent();
        self.out.push_str(&format!("</{name}>\n"));
    }

    pub fn empty(&mut self, name: &str, attrs: &[(&str, &str)]) {
        self.tag(name, attrs);
        self.out.push_str("/>\n");
    }

    pub fn text_element(&mut self, name: &str, attrs: &[(&str, &str)], text: &str) {
        self.tag(name, attrs);
        self.out.push('>');
        self.out.push_str(&escape_text(text));
        self.out.push_str(&format!("</{name}>\n"));
    }

    /// Inserts pre-rendered markup at the current depth. The fragment's first
    /// line is indented here; its remaining lines are taken as-is.
    pub fn raw_fragment(&mut self, fragment: &str) {
        self.indent();
        self.out.push_str(fragment);
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub(crate) fn child_elements<'a, 'input>(
    node: Node<'a, 'input>,
) -> impl Iterator<Item = Node<'a, 'input>> {
    node.children().filter(|c| c.is_element())
}

pub(crate) fn first_child<'a, 'input>(
    node: Node<'a, 'input>,
    name: &str,
) -> Option<Node<'a, 'input>> {
    child_elements(node).find(|c| c.tag_name().name() == name)
}

pub(crate) fn children_named<'a, 'input: 'a>(
    node: Node<'a, 'input>,
    name: &'a str,
) -> impl Iterator<Item = Node<'a, 'input>> + 'a {
    child_elements(node).filter(move |c| c.tag_name().name() == name)
}

/// Concatenated text content of direct text children.
pub(crate) fn text_of(node: Node) -> String {
    node.children()
        .filter(|c| c.is_text())
        .filter_map(|c| c.text())
        .collect::<String>()
}

/// Path of an element for error messages, e.g. `/pim/phsa[2]/automat`.
pub(crate) fn element_path(node: Node) -> String {
    let mut parts = Vec::new();
    let mut cur = Some(node);
    while let Some(n) = cur {
        if n.is_element() {
            let name = n.tag_name().name();
            // `prev_siblings` starts at the node itself.
            let pos = n
                .prev_siblings()
                .filter(|s| s.is_element() && s.tag_name().name() == name)
                .count();
            let total = n
                .parent()
                .map(|p| children_named(p, name).count())
                .unwrap_or(1);
            if total > 1 {
                parts.push(format!("{name}[{pos}]"));
            } else {
                parts.push(name.to_string());
            }
        }
        cur = n.parent();
    }
    parts.reverse();
    format!("/{}", parts.join("/"))
}

/// Parse options shared by all readers: DTDs are declared but external.
pub(crate) fn parse_document(text: &str) -> Result<roxmltree::Document<'_>, roxmltree::Error> {
    let opts = roxmltree::ParsingOptions {
        allow_dtd: true,
        ..Default::default()
    };
    roxmltree::Document::parse_with_options(text, opts)
}
