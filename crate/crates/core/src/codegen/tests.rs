use super::*;
use crate::expr::{parse_expr, GenericType};
use crate::fixtures::atm_controller;
use crate::ir::*;
use crate::pim::write_pim_document;
use crate::psm::{load_profile, transform, DOTNET_PROFILE, JAVA_PROFILE};

fn psm_of(ssa: Ssa, profile: &str) -> PsmDocument {
    let pim = write_pim_document(&FlatNetwork {
        automata: vec![ssa],
        activation_edges: vec![],
    });
    let profile = load_profile(profile, None).unwrap();
    parse_psm(&transform(&pim, None, &profile).unwrap()).unwrap()
}

fn java_atm() -> SourceSet {
    generate(
        &psm_of(atm_controller(), JAVA_PROFILE),
        TargetSyntax::JavaLike,
    )
    .unwrap()
}

/// Lines of the `handler` method body, trimmed.
fn handler_lines(text: &str) -> Vec<&str> {
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    let start = lines
        .iter()
        .position(|l| l.contains("void handler()"))
        .expect("handler present");
    let mut depth = 0i32;
    let mut out = Vec::new();
    for l in &lines[start..] {
        out.push(*l);
        depth += l.matches('{').count() as i32 - l.matches('}').count() as i32;
        if depth == 0 {
            break;
        }
    }
    out
}

#[test]
fn atm_handler_has_reference_shape() {
    let set = java_atm();
    let text = set.get("PhsaA1.java").unwrap();
    assert!(text.contains("public class PhsaA1 extends ClassPHSA {"));
    assert!(text.contains("private int errors=0;"));
    let expected = [
        "public void handler() {",
        "if (_cstate.equals(\"a1_s0\")) {",
        "_cstate=\"a1_s1\";",
        "a1_s1();",
        "}",
        "else if (_cstate.equals(\"a1_s1\")) {",
        "if (_event.equals(\"ev3\")) {",
        "_cstate=\"a1_s2\";",
        "a1_s2();",
        "}",
        "}",
        "else if (_cstate.equals(\"a1_s2\")) {",
        "if (_event.equals(\"ev7\")) {",
        "_cstate=\"a1_end\";",
        "}",
        "else if (_event.equals(\"ev8\")) {",
        "_cstate=\"a1_s3\";",
        "a1_s3();",
        "}",
        "}",
        "else if (_cstate.equals(\"a1_s3\")) {",
        "if (PIN_code_OK==true) {",
        "_cstate=\"a1_s4\";",
        "a1_s4();",
        "}",
    ];
    let got = handler_lines(text);
    assert_eq!(&got[..expected.len()], &expected[..]);
    // Remaining guards of S3, in table order.
    assert_eq!(got[expected.len()], "else if (errors==3) {");
    assert!(text.contains("else if ((PIN_code_OK==false) && (errors<3)) {"));
}

#[test]
fn handler_indentation_is_uniform() {
    let set = java_atm();
    let text = set.get("PhsaA1.java").unwrap();
    let start = text.find("    public void handler() {").unwrap();
    let excerpt = &text[start..];
    assert!(excerpt.starts_with(
        "    public void handler() {\n        if (_cstate.equals(\"a1_s0\")) {\n            _cstate=\"a1_s1\";\n            a1_s1();\n        }\n        else if"
    ));
}

#[test]
fn minimal_automaton_single_branch() {
    let mut ssa = Ssa::new("M");
    ssa.states = vec![
        StateDef::new("M_S0", "S0", StateKind::Initial),
        StateDef::new("M_End", "End", StateKind::Final),
    ];
    ssa.transitions = vec![Transition::new("M_S0", "M_End")];
    let set = generate(&psm_of(ssa, JAVA_PROFILE), TargetSyntax::JavaLike).unwrap();
    let got = handler_lines(set.get("PhsaM.java").unwrap());
    assert_eq!(
        got,
        [
            "public void handler() {",
            "if (_cstate.equals(\"m_s0\")) {",
            "_cstate=\"m_end\";",
            "}",
            "}",
        ]
    );
}

/// Independent oracle: walks the transition table and checks the handler
/// text branch by branch.
fn check_branches(ssa: &Ssa, text: &str) {
    let lines = handler_lines(text);
    let state_heads: Vec<&str> = lines
        .iter()
        .copied()
        .filter(|l| l.contains("_cstate.equals("))
        .collect();
    let non_final: Vec<&StateDef> = ssa
        .states
        .iter()
        .filter(|s| s.kind != StateKind::Final)
        .collect();
    assert_eq!(state_heads.len(), non_final.len());
    for (head, st) in state_heads.iter().zip(&non_final) {
        assert!(
            head.contains(&format!("\"{}\"", st.id.to_lowercase())),
            "{head} vs {}",
            st.id
        );
    }
    for st in &non_final {
        let eventful: Vec<&Transition> = ssa
            .transitions
            .iter()
            .filter(|t| t.source == st.id && t.event.is_some())
            .collect();
        let head = format!("_cstate.equals(\"{}\")", st.id.to_lowercase());
        let at = lines.iter().position(|l| l.contains(&head)).unwrap();
        let end = lines[at + 1..]
            .iter()
            .position(|l| l.contains("_cstate.equals("))
            .map(|p| at + 1 + p)
            .unwrap_or(lines.len());
        let body = &lines[at + 1..end];
        let mut pos = 0;
        for t in eventful {
            let probe = format!("_event.equals(\"{}\")", t.event.as_ref().unwrap());
            let found = body[pos..]
                .iter()
                .position(|l| l.contains(&probe))
                .unwrap_or_else(|| panic!("{} lacks a test of {probe}", st.id));
            pos += found + 1;
        }
    }
}

#[test]
fn every_eventful_transition_has_a_branch() {
    let set = java_atm();
    check_branches(&atm_controller(), set.get("PhsaA1.java").unwrap());
}

#[test]
fn memory_fields_sorted_and_typed() {
    let set = java_atm();
    let text = set.get("PhsaA1.java").unwrap();
    let a = text.find("private boolean PIN_code_OK;").unwrap();
    let b = text.find("private int errors=0;").unwrap();
    assert!(a < b);
    assert!(text.contains("protected void verifyPINCode() {"));
    assert!(text.contains("// Supplied by the application."));
    assert!(text.contains("private void a1_s3() {\n        verifyPINCode();\n    }"));
    assert!(text.contains(
        "guards.put(\"A1_C1\", new Guard(\"A1_C1\", new OclExpression(\"PIN_code_OK = true\")));"
    ));
}

#[test]
fn source_set_inventory() {
    let set = java_atm();
    let names: Vec<&str> = set.files.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "ClassPHSA.java",
            "PhsaA1.java",
            "Dispatcher.java",
            "amda/streamio/Console.java",
            "HashTable.java",
        ]
    );
    for f in &set.files {
        check_lexical(&f.text).unwrap_or_else(|e| panic!("{}: {e}", f.name));
    }
    let disp = set.get("Dispatcher.java").unwrap();
    assert!(disp.contains("instances.put(\"A1\", new PhsaA1(\"A1\", this, null));"));
    assert!(set
        .get("ClassPHSA.java")
        .unwrap()
        .contains("import java.util.*;"));
}

#[test]
fn csharp_output() {
    let psm = psm_of(atm_controller(), DOTNET_PROFILE);
    let set = generate(&psm, TargetSyntax::CSharpLike).unwrap();
    let names: Vec<&str> = set.files.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(
        names,
        ["ClassPHSA.cs", "PhsaA1.cs", "Dispatcher.cs", "InputBox.cs"]
    );
    let text = set.get("PhsaA1.cs").unwrap();
    assert!(text.starts_with("using System;\n"));
    assert!(text.contains("public class PhsaA1 : ClassPHSA {"));
    assert!(text.contains("public override void handler() {"));
    assert!(text.contains("if (_cstate.Equals(\"a1_s0\")) {"));
    assert!(text.contains("private bool PIN_code_OK;"));
    assert!(text.contains("states[\"a1_s0\"] = new State("));
    assert!(text.contains(": base(name, \"A1\", dispatcher, parent, \"a1_s0\") {"));
    assert!(set
        .get("ClassPHSA.cs")
        .unwrap()
        .contains("protected static Array ordered(params object[] items) {"));
}

#[test]
fn generation_is_deterministic() {
    assert_eq!(java_atm(), java_atm());
}

#[test]
fn expressions_lower_per_syntax() {
    let mut ssa = atm_controller();
    ssa.memory.variables.push(Variable {
        name: "digits".into(),
        ty: GenericType::OrdCollect,
        init: None,
    });
    ssa.memory.variables.push(Variable {
        name: "who".into(),
        ty: GenericType::String,
        init: Some(parse_expr("\"x\"").unwrap()),
    });
    ssa.condition_scheme.conditions.push(Condition {
        id: "A1_C9".into(),
        expr: parse_expr("digits->size() = 4 and who <> \"bob\" and not PIN_code_OK").unwrap(),
    });
    ssa.transitions
        .push(Transition::new("A1_S6", "A1_End").on("ev13").when("A1_C9"));
    let java = generate(&psm_of(ssa.clone(), JAVA_PROFILE), TargetSyntax::JavaLike).unwrap();
    let j = java.get("PhsaA1.java").unwrap();
    assert!(
        j.contains("_event.equals(\"ev13\") && (((digits.size()==4) && (!who.equals(\"bob\"))) && !PIN_code_OK"),
        "{j}"
    );
    assert!(j.contains("private ArrayList digits=ordered();"));
    let cs = generate(&psm_of(ssa, DOTNET_PROFILE), TargetSyntax::CSharpLike).unwrap();
    let c = cs.get("PhsaA1.cs").unwrap();
    assert!(c.contains("digits.Length==4"), "{c}");
    assert!(c.contains("who!=\"bob\""));
}

#[test]
fn set_literal_with_elements_is_unsupported() {
    let mut ssa = atm_controller();
    ssa.memory.variables.push(Variable {
        name: "seen".into(),
        ty: GenericType::UnordCollect,
        init: Some(parse_expr("Set{1, 2}").unwrap()),
    });
    let err = generate(&psm_of(ssa, JAVA_PROFILE), TargetSyntax::JavaLike).unwrap_err();
    assert_eq!(err.code(), "unsupported-expression-node");
}

#[test]
fn reserved_identifiers_rejected() {
    let mut ssa = atm_controller();
    ssa.memory.variables[0].name = "class".into();
    let err = generate(&psm_of(ssa, JAVA_PROFILE), TargetSyntax::JavaLike).unwrap_err();
    assert_eq!(err.code(), "invalid-identifier");
}

#[test]
fn lexical_checker_catches_imbalance() {
    assert!(check_lexical("a { b ( c ) }").is_ok());
    assert!(check_lexical("s = \"}\"; // )").is_ok());
    assert!(check_lexical("a { b ( c }").is_err());
    assert!(check_lexical("x = {subject};").is_err());
    assert!(check_lexical("/* open").is_err());
}

#[test]
fn hierarchy_children_and_completion() {
    let parent = {
        let mut p = Ssa::new("P");
        p.states = vec![
            StateDef::new("P_S0", "S0", StateKind::Initial),
            StateDef::new("P_S1", "S1", StateKind::Ordinary),
            StateDef::new("P_End", "End", StateKind::Final),
        ];
        p.transitions = vec![
            Transition::new("P_S0", "P_S1"),
            Transition::new("P_S1", "P_End"),
        ];
        p
    };
    let child = {
        let mut c = Ssa::new("C");
        c.states = vec![
            StateDef::new("C_S0", "S0", StateKind::Initial),
            StateDef::new("C_End", "End", StateKind::Final),
        ];
        c.events = vec![EventDef::new("go")];
        c.transitions = vec![Transition::new("C_S0", "C_End").on("go")];
        c
    };
    let flat = flatten_hierarchy(&HsaNetwork {
        automata: vec![parent, child],
        bindings: vec![Binding {
            parent: 0,
            state: "P_S1".into(),
            child: 1,
        }],
    })
    .unwrap();
    let pim = write_pim_document(&flat);
    let profile = load_profile(JAVA_PROFILE, None).unwrap();
    let psm = parse_psm(&transform(&pim, None, &profile).unwrap()).unwrap();
    let set = generate(&psm, TargetSyntax::JavaLike).unwrap();
    let p = set.get("PhsaP.java").unwrap();
    assert!(p.contains("children.put(\"C\", new PhsaC(name + \"/C\", dispatcher, this));"));
    assert!(p.contains("activate(\"C\");"));
    let c = set.get("PhsaC.java").unwrap();
    assert!(c.contains("send(\"DummyEvent_0_P_S1\", \"P\");"));
    // Only the root automaton is instantiated by the dispatcher.
    let d = set.get("Dispatcher.java").unwrap();
    assert!(d.contains("_names = { \"P\" };"));
    assert!(!d.contains("new PhsaC"));
    let lines = handler_lines(p);
    let dummy = lines
        .iter()
        .position(|l| l.contains("_cstate.equals(\"dummystate_0_p_s1\")"))
        .unwrap();
    assert_eq!(lines[dummy + 1], "_cstate=\"p_end\";");
}
