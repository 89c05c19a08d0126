//! Target-language settings and the fixed parts of a source set.

use crate::psm::{PsmDocument, TargetSyntax};

use super::lower::quote;

/// Indenting line buffer.
pub(crate) struct Code {
    out: String,
    depth: usize,
}

impl Code {
    pub fn new() -> Self {
        Code {
            out: String::new(),
            depth: 0,
        }
    }

    pub fn line(&mut self, s: &str) {
        if !s.is_empty() {
            for _ in 0..self.depth {
                self.out.push_str("    ");
            }
            self.out.push_str(s);
        }
        self.out.push('\n');
    }

    /// Writes `head` (which ends with `{`) and indents.
    pub fn open(&mut self, head: &str) {
        self.line(head);
        self.depth += 1;
    }

    pub fn close(&mut self) {
        self.depth -= 1;
        self.line("}");
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub(crate) struct Lang {
    pub syntax: TargetSyntax,
    pub ordered: String,
    pub unordered: String,
    pub imports: Vec<String>,
}

const JAVA_LISTS: &[&str] = &["ArrayList", "LinkedList", "Vector"];
const JAVA_MAPS: &[&str] = &["Hashtable", "HashMap", "TreeMap", "LinkedHashMap"];
const CS_LISTS: &[&str] = &["Array", "ArrayList"];
const CS_MAPS: &[&str] = &["Hashtable", "SortedList"];

impl Lang {
    pub fn new(syntax: TargetSyntax, psm: &PsmDocument) -> Lang {
        let (list, map) = match syntax {
            TargetSyntax::JavaLike => ("ArrayList", "Hashtable"),
            TargetSyntax::CSharpLike => ("ArrayList", "Hashtable"),
        };
        Lang {
            syntax,
            ordered: psm
                .ordered_collection
                .clone()
                .unwrap_or_else(|| list.to_string()),
            unordered: psm
                .unordered_collection
                .clone()
                .unwrap_or_else(|| map.to_string()),
            imports: psm.imports.clone(),
        }
    }

    pub fn java(&self) -> bool {
        self.syntax == TargetSyntax::JavaLike
    }

    pub fn string(&self) -> &'static str {
        if self.java() {
            "String"
        } else {
            "string"
        }
    }

    pub fn boolean(&self) -> &'static str {
        if self.java() {
            "boolean"
        } else {
            "bool"
        }
    }

    pub fn equals(&self) -> &'static str {
        if self.java() {
            "equals"
        } else {
            "Equals"
        }
    }

    pub fn readonly(&self) -> &'static str {
        if self.java() {
            "final"
        } else {
            "readonly"
        }
    }

    /// `override ` in C#, nothing in Java.
    pub fn overrides(&self) -> &'static str {
        if self.java() {
            ""
        } else {
            "override "
        }
    }

    pub fn put(&self, coll: &str, key: &str, value: &str) -> String {
        if self.java() {
            format!("{coll}.put({key}, {value});")
        } else {
            format!("{coll}[{key}] = {value};")
        }
    }

    pub fn header(&self, code: &mut Code) {
        for i in &self.imports {
            if self.java() {
                code.line(&format!("import {i};"));
            } else {
                code.line(&format!("using {i};"));
            }
        }
        if !self.imports.is_empty() {
            code.line("");
        }
    }

    /// Collection classes that are not part of the platform library and
    /// need a generated helper.
    fn custom_collections(&self) -> Vec<(&str, &'static str)> {
        let (lists, maps, list_base, map_base) = if self.java() {
            (
                JAVA_LISTS,
                JAVA_MAPS,
                "java.util.ArrayList<Object>",
                "java.util.Hashtable<Object, Object>",
            )
        } else {
            (
                CS_LISTS,
                CS_MAPS,
                "System.Collections.ArrayList",
                "System.Collections.Hashtable",
            )
        };
        let mut out = Vec::new();
        if !lists.contains(&self.ordered.as_str()) {
            out.push((self.ordered.as_str(), list_base));
        }
        if !maps.contains(&self.unordered.as_str()) && self.unordered != self.ordered {
            out.push((self.unordered.as_str(), map_base));
        }
        out
    }
}

struct Record {
    name: &'static str,
    parent: Option<&'static str>,
    is_abstract: bool,
    /// `(type, name)`; `$ORD` stands for the ordered collection class.
    fields: &'static [(&'static str, &'static str)],
}

const IO_FIELDS: &[(&str, &str)] = &[
    ("String", "id"),
    ("String", "destination"),
    ("String", "control"),
];

const RECORDS: &[Record] = &[
    Record {
        name: "State",
        parent: None,
        is_abstract: false,
        fields: &[
            ("String", "id"),
            ("String", "name"),
            ("String", "kind"),
            ("$ORD", "actions"),
        ],
    },
    Record {
        name: "Event",
        parent: None,
        is_abstract: false,
        fields: &[("String", "id"), ("String", "description")],
    },
    Record {
        name: "Transition",
        parent: None,
        is_abstract: false,
        fields: &[
            ("String", "source"),
            ("String", "event"),
            ("String", "guard"),
            ("String", "destination"),
        ],
    },
    Record {
        name: "OclExpression",
        parent: None,
        is_abstract: false,
        fields: &[("String", "text")],
    },
    Record {
        name: "Guard",
        parent: None,
        is_abstract: false,
        fields: &[("String", "id"), ("OclExpression", "expression")],
    },
    Record {
        name: "Action",
        parent: None,
        is_abstract: true,
        fields: &[],
    },
    Record {
        name: "InlineAction",
        parent: Some("Action"),
        is_abstract: false,
        fields: &[("String", "text")],
    },
    Record {
        name: "CallAction",
        parent: Some("Action"),
        is_abstract: false,
        fields: &[("String", "function")],
    },
    Record {
        name: "SendEvent",
        parent: Some("Action"),
        is_abstract: false,
        fields: &[("String", "event"), ("String", "target")],
    },
    Record {
        name: "ActivateAction",
        parent: Some("Action"),
        is_abstract: false,
        fields: &[("String", "child")],
    },
    Record {
        name: "FuncAction",
        parent: None,
        is_abstract: false,
        fields: &[
            ("String", "id"),
            ("String", "name"),
            ("boolean", "external"),
        ],
    },
    Record {
        name: "Variable",
        parent: None,
        is_abstract: false,
        fields: &[("String", "name"), ("String", "type")],
    },
    Record {
        name: "IOAction",
        parent: None,
        is_abstract: true,
        fields: IO_FIELDS,
    },
    Record {
        name: "StreamInput",
        parent: Some("IOAction"),
        is_abstract: false,
        fields: &[],
    },
    Record {
        name: "StreamOutput",
        parent: Some("IOAction"),
        is_abstract: false,
        fields: &[],
    },
    Record {
        name: "GuiInput",
        parent: Some("IOAction"),
        is_abstract: false,
        fields: &[],
    },
    Record {
        name: "GuiOutput",
        parent: Some("IOAction"),
        is_abstract: false,
        fields: &[],
    },
];

fn record_type(lang: &Lang, ty: &str) -> String {
    match ty {
        "String" => lang.string().to_string(),
        "boolean" => lang.boolean().to_string(),
        "$ORD" => lang.ordered.clone(),
        other => other.to_string(),
    }
}

fn write_record(code: &mut Code, lang: &Lang, r: &Record) {
    let modifiers = match (lang.java(), r.is_abstract) {
        (true, true) => "public abstract static class",
        (true, false) => "public static class",
        (false, true) => "public abstract class",
        (false, false) => "public class",
    };
    let inherited: &[(&str, &str)] = match r.parent {
        Some("IOAction") => IO_FIELDS,
        _ => &[],
    };
    let head = match (r.parent, lang.java()) {
        (Some(p), true) => format!("{modifiers} {} extends {p} {{", r.name),
        (Some(p), false) => format!("{modifiers} {} : {p} {{", r.name),
        (None, _) => format!("{modifiers} {} {{", r.name),
    };
    code.open(&head);
    for (ty, name) in r.fields {
        code.line(&format!(
            "public {} {} {name};",
            lang.readonly(),
            record_type(lang, ty)
        ));
    }
    let params: Vec<String> = inherited
        .iter()
        .chain(r.fields)
        .map(|(ty, name)| format!("{} {name}", record_type(lang, ty)))
        .collect();
    let visibility = if r.is_abstract { "protected" } else { "public" };
    if !params.is_empty() {
        if !r.fields.is_empty() {
            code.line("");
        }
        let super_args: Vec<&str> = inherited.iter().map(|(_, n)| *n).collect();
        if lang.java() || super_args.is_empty() {
            code.open(&format!(
                "{visibility} {}({}) {{",
                r.name,
                params.join(", ")
            ));
        } else {
            code.open(&format!(
                "{visibility} {}({}) : base({}) {{",
                r.name,
                params.join(", "),
                super_args.join(", ")
            ));
        }
        if lang.java() && !super_args.is_empty() {
            code.line(&format!("super({});", super_args.join(", ")));
        }
        for (_, name) in r.fields {
            code.line(&format!("this.{name} = {name};"));
        }
        code.close();
    }
    code.close();
}

const JAVA_BASE: &str = r#"protected String _cstate;
protected String _event = "";
protected final String _name;
protected final String _phsa;
protected final String _initial;
protected final Dispatcher _dispatcher;
protected final ClassPHSA _parent;
protected ClassPHSA _active;
private int _activations;
protected $UNORD states = new $UNORD();
protected $UNORD events = new $UNORD();
protected $UNORD transitions = new $UNORD();
protected $UNORD children = new $UNORD();

protected ClassPHSA(String name, String phsa, Dispatcher dispatcher, ClassPHSA parent, String initial) {
    _name = name;
    _phsa = phsa;
    _dispatcher = dispatcher;
    _parent = parent;
    _initial = initial;
    _cstate = initial;
}

/** Transition function: moves from _cstate on _event. */
public abstract void handler();

/** Whether the current state has a transition enabled by ev. */
protected abstract boolean enabled(String ev);

public String name() {
    return _name;
}

public String state() {
    return _cstate;
}

public ClassPHSA root() {
    return _parent == null ? this : _parent.root();
}

/** The automaton of this object whose class id is phsa. */
public ClassPHSA find(String phsa) {
    if (_phsa.equals(phsa)) {
        return this;
    }
    for (Object child : children.values()) {
        ClassPHSA found = ((ClassPHSA) child).find(phsa);
        if (found != null) {
            return found;
        }
    }
    return null;
}

public void start() {
    complete();
}

/** Fires completion transitions until the state is stable. */
protected void complete() {
    String before;
    do {
        before = _cstate;
        step("");
    } while (!_cstate.equals(before));
}

private void step(String ev) {
    String before = _cstate;
    int activations = _activations;
    _event = ev;
    handler();
    if (!_cstate.equals(before) && _activations == activations) {
        _active = null;
    }
}

/** Offers ev to the active sub-automaton first, then to this one. */
public boolean deliver(String ev) {
    if (_active != null && _active.deliver(ev)) {
        return true;
    }
    if (!enabled(ev)) {
        return false;
    }
    step(ev);
    complete();
    return true;
}

protected void activate(String child) {
    ClassPHSA c = (ClassPHSA) children.get(child);
    c.reset();
    _active = c;
    _activations++;
    c.complete();
}

protected void reset() {
    _cstate = _initial;
    _active = null;
}

protected void send(String ev) {
    _dispatcher.post(this, ev, null);
}

protected void send(String ev, String target) {
    _dispatcher.post(this, ev, target);
}

protected static $ORD ordered(Object... items) {
    $ORD result = new $ORD();
    result.addAll(java.util.Arrays.asList(items));
    return result;
}
"#;

const CS_BASE: &str = r#"protected string _cstate;
protected string _event = "";
protected readonly string _name;
protected readonly string _phsa;
protected readonly string _initial;
protected readonly Dispatcher _dispatcher;
protected readonly ClassPHSA _parent;
protected ClassPHSA _active;
private int _activations;
protected $UNORD states = new $UNORD();
protected $UNORD events = new $UNORD();
protected $UNORD transitions = new $UNORD();
protected $UNORD children = new $UNORD();

protected ClassPHSA(string name, string phsa, Dispatcher dispatcher, ClassPHSA parent, string initial) {
    _name = name;
    _phsa = phsa;
    _dispatcher = dispatcher;
    _parent = parent;
    _initial = initial;
    _cstate = initial;
}

/// Transition function: moves from _cstate on _event.
public abstract void handler();

/// Whether the current state has a transition enabled by ev.
protected abstract bool enabled(string ev);

public string name() {
    return _name;
}

public string state() {
    return _cstate;
}

public ClassPHSA root() {
    return _parent == null ? this : _parent.root();
}

/// The automaton of this object whose class id is phsa.
public ClassPHSA find(string phsa) {
    if (_phsa.Equals(phsa)) {
        return this;
    }
    foreach (object child in children.Values) {
        ClassPHSA found = ((ClassPHSA) child).find(phsa);
        if (found != null) {
            return found;
        }
    }
    return null;
}

public void start() {
    complete();
}

/// Fires completion transitions until the state is stable.
protected void complete() {
    string before;
    do {
        before = _cstate;
        step("");
    } while (!_cstate.Equals(before));
}

private void step(string ev) {
    string before = _cstate;
    int activations = _activations;
    _event = ev;
    handler();
    if (!_cstate.Equals(before) && _activations == activations) {
        _active = null;
    }
}

/// Offers ev to the active sub-automaton first, then to this one.
public bool deliver(string ev) {
    if (_active != null && _active.deliver(ev)) {
        return true;
    }
    if (!enabled(ev)) {
        return false;
    }
    step(ev);
    complete();
    return true;
}

protected void activate(string child) {
    ClassPHSA c = (ClassPHSA) children[child];
    c.reset();
    _active = c;
    _activations++;
    c.complete();
}

protected void reset() {
    _cstate = _initial;
    _active = null;
}

protected void send(string ev) {
    _dispatcher.post(this, ev, null);
}

protected void send(string ev, string target) {
    _dispatcher.post(this, ev, target);
}
"#;

const CS_ORDERED_ARRAY: &str = r#"protected static Array ordered(params object[] items) {
    return items;
}
"#;

const CS_ORDERED_LIST: &str = r#"protected static $ORD ordered(params object[] items) {
    $ORD result = new $ORD();
    foreach (object item in items) {
        result.Add(item);
    }
    return result;
}
"#;

fn fill(lang: &Lang, template: &str) -> String {
    template
        .replace("$ORD", &lang.ordered)
        .replace("$UNORD", &lang.unordered)
}

/// Adds template lines at the current depth.
fn block(code: &mut Code, text: &str) {
    for l in text.lines() {
        let trimmed = l.trim_start();
        let extra = (l.len() - trimmed.len()) / 4;
        for _ in 0..extra {
            code.depth += 1;
        }
        code.line(trimmed);
        for _ in 0..extra {
            code.depth -= 1;
        }
    }
}

pub(crate) fn base_class(lang: &Lang) -> String {
    let mut code = Code::new();
    lang.header(&mut code);
    if lang.java() {
        code.line("/** Generic automaton structure shared by all PHSA classes. */");
    } else {
        code.line("/// Generic automaton structure shared by all PHSA classes.");
    }
    code.open("public abstract class ClassPHSA {");
    for r in RECORDS {
        write_record(&mut code, lang, r);
        code.line("");
    }
    if lang.java() {
        block(&mut code, &fill(lang, JAVA_BASE));
    } else {
        block(&mut code, &fill(lang, CS_BASE));
        code.line("");
        let ordered = if lang.ordered == "Array" {
            CS_ORDERED_ARRAY
        } else {
            CS_ORDERED_LIST
        };
        block(&mut code, &fill(lang, ordered));
    }
    code.close();
    code.finish()
}

const JAVA_DISPATCH: &str = r##"public ClassPHSA instance(String name) {
    return (ClassPHSA) instances.get(name);
}

/** Queues ev from sender for its target automaton or routed receiver. */
public void post(ClassPHSA sender, String ev, String target) {
    ClassPHSA receiver = null;
    if (target != null) {
        receiver = sender.root().find(target);
    }
    else {
        Object name = routes.get(sender.root().name() + " " + ev);
        if (name != null) {
            receiver = instance((String) name);
        }
    }
    if (receiver == null) {
        System.out.println(sender.name() + ": no route for " + ev);
        return;
    }
    queue.add(new Object[] { receiver, ev });
}

public void run() {
    while (!queue.isEmpty()) {
        Object[] item = (Object[]) queue.removeFirst();
        ClassPHSA receiver = (ClassPHSA) item[0];
        String ev = (String) item[1];
        if (!receiver.deliver(ev)) {
            System.out.println(receiver.name() + ": dropped " + ev);
        }
    }
}

public void start() {
    for (int i = 0; i < _names.length; i++) {
        instance(_names[i]).start();
    }
    run();
}

public void inject(String name, String ev) {
    ClassPHSA receiver = instance(name);
    if (receiver == null) {
        System.out.println("unknown instance " + name);
        return;
    }
    queue.add(new Object[] { receiver, ev });
    run();
}

/** Reads `instance event` lines from standard input. */
public static void main(String[] args) {
    Dispatcher dispatcher = new Dispatcher();
    dispatcher.start();
    String line;
    while ((line = amda.streamio.Console.readLine()) != null) {
        line = line.trim();
        if (line.length() == 0 || line.startsWith("#")) {
            continue;
        }
        String[] parts = line.split("\\s+");
        if (parts.length == 2) {
            dispatcher.inject(parts[0], parts[1]);
        }
    }
}
"##;

const CS_DISPATCH: &str = r##"public ClassPHSA instance(string name) {
    return instances[name] as ClassPHSA;
}

/// Queues ev from sender for its target automaton or routed receiver.
public void post(ClassPHSA sender, string ev, string target) {
    ClassPHSA receiver = null;
    if (target != null) {
        receiver = sender.root().find(target);
    }
    else {
        string name = routes[sender.root().name() + " " + ev] as string;
        if (name != null) {
            receiver = instance(name);
        }
    }
    if (receiver == null) {
        System.Console.WriteLine(sender.name() + ": no route for " + ev);
        return;
    }
    queue.Enqueue(new object[] { receiver, ev });
}

public void run() {
    while (queue.Count > 0) {
        object[] item = (object[]) queue.Dequeue();
        ClassPHSA receiver = (ClassPHSA) item[0];
        string ev = (string) item[1];
        if (!receiver.deliver(ev)) {
            System.Console.WriteLine(receiver.name() + ": dropped " + ev);
        }
    }
}

public void start() {
    foreach (string name in _names) {
        instance(name).start();
    }
    run();
}

public void inject(string name, string ev) {
    ClassPHSA receiver = instance(name);
    if (receiver == null) {
        System.Console.WriteLine("unknown instance " + name);
        return;
    }
    queue.Enqueue(new object[] { receiver, ev });
    run();
}

/// Reads `instance event` lines from standard input.
public static void Main(string[] args) {
    Dispatcher dispatcher = new Dispatcher();
    dispatcher.start();
    string line;
    while ((line = System.Console.ReadLine()) != null) {
        line = line.Trim();
        if (line.Length == 0 || line.StartsWith("#")) {
            continue;
        }
        string[] parts = line.Split((char[]) null, System.StringSplitOptions.RemoveEmptyEntries);
        if (parts.Length == 2) {
            dispatcher.inject(parts[0], parts[1]);
        }
    }
}
"##;

/// Objects to create: `(instance name, automaton id)`. Without a
/// dispatcher every root automaton becomes one object named by its id.
pub(crate) fn instances(psm: &PsmDocument) -> Vec<(String, String)> {
    match &psm.dispatcher {
        Some(d) => d
            .instances
            .iter()
            .map(|i| (i.id.clone(), i.phsa.clone()))
            .collect(),
        None => {
            let children: Vec<usize> = psm.activation_edges.iter().map(|e| e.child).collect();
            psm.automata
                .iter()
                .enumerate()
                .filter(|(i, _)| !children.contains(i))
                .map(|(_, a)| (a.ssa.id.clone(), a.ssa.id.clone()))
                .collect()
        }
    }
}

pub(crate) fn dispatcher(lang: &Lang, psm: &PsmDocument) -> String {
    let mut code = Code::new();
    lang.header(&mut code);
    let instances = instances(psm);
    let s = lang.string();
    let ro = lang.readonly();
    if lang.java() {
        code.line("/** Creates the application objects and routes events between them. */");
    } else {
        code.line("/// Creates the application objects and routes events between them.");
    }
    code.open("public class Dispatcher {");
    let names: Vec<String> = instances.iter().map(|(n, _)| quote(n)).collect();
    if names.is_empty() {
        code.line(&format!("private {ro} {s}[] _names = {{}};"));
    } else {
        code.line(&format!(
            "private {ro} {s}[] _names = {{ {} }};",
            names.join(", ")
        ));
    }
    code.line(&format!(
        "private {ro} {u} instances = new {u}();",
        u = lang.unordered
    ));
    code.line(&format!(
        "private {ro} {u} routes = new {u}();",
        u = lang.unordered
    ));
    if lang.java() {
        code.line("private final java.util.LinkedList queue = new java.util.LinkedList();");
    } else {
        code.line(
            "private readonly System.Collections.Queue queue = new System.Collections.Queue();",
        );
    }
    code.line("");
    code.open("public Dispatcher() {");
    for (name, phsa) in &instances {
        let n = quote(name);
        code.line(&lang.put("instances", &n, &format!("new Phsa{phsa}({n}, this, null)")));
    }
    if let Some(d) = &psm.dispatcher {
        for r in &d.routes {
            code.line(&lang.put(
                "routes",
                &quote(&format!("{} {}", r.sender, r.event)),
                &quote(&r.receiver),
            ));
        }
    }
    code.close();
    code.line("");
    block(
        &mut code,
        if lang.java() {
            JAVA_DISPATCH
        } else {
            CS_DISPATCH
        },
    );
    code.close();
    code.finish()
}

const JAVA_CONSOLE: &str = r#"package amda.streamio;

import java.io.BufferedReader;
import java.io.IOException;
import java.io.InputStreamReader;

/** Console input for stream io actions and the dispatcher loop. */
public final class Console {
    private static final BufferedReader IN = new BufferedReader(new InputStreamReader(System.in));

    private Console() {
    }

    /** Next line of standard input, or null at its end. */
    public static String readLine() {
        try {
            return IN.readLine();
        } catch (IOException e) {
            return null;
        }
    }

    public static String readString() {
        String line = readLine();
        return line == null ? "" : line;
    }

    public static int readInt() {
        return parseInt(readString());
    }

    public static double readDouble() {
        return parseDouble(readString());
    }

    public static boolean readBoolean() {
        return parseBoolean(readString());
    }

    public static char readChar() {
        return parseChar(readString());
    }

    public static String parseString(String s) {
        return s == null ? "" : s;
    }

    public static int parseInt(String s) {
        return Integer.parseInt(parseString(s).trim());
    }

    public static double parseDouble(String s) {
        return Double.parseDouble(parseString(s).trim());
    }

    public static boolean parseBoolean(String s) {
        return Boolean.parseBoolean(parseString(s).trim());
    }

    public static char parseChar(String s) {
        String t = parseString(s);
        return t.length() == 0 ? '\0' : t.charAt(0);
    }
}
"#;

const CS_INPUT_BOX: &str = r#"using System.Windows.Forms;

/// Modal text prompt used by GUI input io actions.
public static class InputBox {
    public static string Show(string prompt) {
        Form form = new Form();
        form.Text = prompt;
        form.ClientSize = new System.Drawing.Size(280, 100);
        Label label = new Label();
        label.Text = prompt;
        label.SetBounds(10, 10, 260, 20);
        TextBox box = new TextBox();
        box.SetBounds(10, 35, 260, 20);
        Button ok = new Button();
        ok.Text = "OK";
        ok.DialogResult = DialogResult.OK;
        ok.SetBounds(195, 65, 75, 25);
        form.Controls.Add(label);
        form.Controls.Add(box);
        form.Controls.Add(ok);
        form.AcceptButton = ok;
        return form.ShowDialog() == DialogResult.OK ? box.Text : "";
    }
}
"#;

/// Helper classes: console/dialog input and non-library collections.
pub(crate) fn helpers(lang: &Lang) -> Vec<(String, String)> {
    let ext = lang.syntax.extension();
    let mut out = Vec::new();
    if lang.java() {
        out.push((
            "amda/streamio/Console.java".to_string(),
            JAVA_CONSOLE.to_string(),
        ));
    } else {
        out.push(("InputBox.cs".to_string(), CS_INPUT_BOX.to_string()));
    }
    for (name, base) in lang.custom_collections() {
        let text = if lang.java() {
            format!("/** Collection class named by the platform profile. */\npublic class {name} extends {base} {{\n}}\n")
        } else {
            format!("/// Collection class named by the platform profile.\npublic class {name} : {base} {{\n}}\n")
        };
        out.push((format!("{name}.{ext}"), text));
    }
    out
}
