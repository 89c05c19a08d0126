use super::*;
use crate::fixtures::atm_controller;
use crate::ir::*;

const ATM: &str = include_str!("../../../../fixtures/atm/a1_controller.statechart.xml");
const ATM_XMI: &str = include_str!("../../../../fixtures/atm/xmi/a1_controller.xmi");

fn native(text: &str) -> Result<StatechartDoc, FrontendError> {
    parse_statechart(text, ChartFormat::Native)
}

fn single(text: &str) -> Ssa {
    let net = synthesize_ssa(&native(text).unwrap()).unwrap();
    assert!(net.bindings.is_empty());
    net.automata.into_iter().next().unwrap()
}

#[test]
fn atm_chart_parses_with_presentation_stripped() {
    let doc = native(ATM).unwrap();
    let names: Vec<&str> = doc.root.states.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(
        names,
        ["S0", "S1", "S2", "S3", "S4", "S5", "S6", "S7", "End"]
    );
    assert_eq!(doc.root.transitions.len(), 11);
    assert!(doc.warnings.is_empty());
    assert_eq!(ChartFormat::detect(ATM), ChartFormat::Native);
    assert_eq!(ChartFormat::detect(ATM_XMI), ChartFormat::Xmi);
}

#[test]
fn atm_tables_match_hand_assembled_controller() {
    let ssa = single(ATM);
    let events: Vec<&str> = ssa.events.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(events, ["ev3", "ev7", "ev8", "ev13", "ev15"]);
    assert_eq!(ssa.transitions.len(), 11);
    let guarded_from_s3 = ssa
        .transitions
        .iter()
        .filter(|t| t.source == "A1_S3" && t.event.is_none() && t.guard.is_some())
        .count();
    assert_eq!(guarded_from_s3, 3);
    assert_eq!(render_tables(&ssa), render_tables(&atm_controller()));
    assert_eq!(
        ssa.condition_scheme.func_actions,
        atm_controller().condition_scheme.func_actions
    );
}

#[test]
fn xmi_subset_yields_same_tables() {
    let doc = parse_statechart(ATM_XMI, ChartFormat::Xmi).unwrap();
    assert!(doc.warnings.is_empty(), "{:?}", doc.warnings);
    let net = synthesize_ssa(&doc).unwrap();
    assert_eq!(render_tables(&net.automata[0]), render_tables(&single(ATM)));
}

#[test]
fn entry_action_order_is_preserved() {
    let ssa = single(
        r#"<statechart id="A"><initial/>
             <state name="S1"><entry>send(a)</entry><entry>send(b)</entry></state>
             <final/>
             <transition source="S0" target="S1"/>
             <transition source="S1" target="End"/></statechart>"#,
    );
    let send = |e: &str| ActionRef::SendEvent {
        event: e.into(),
        target: None,
    };
    assert_eq!(
        ssa.state("A_S1").unwrap().entry_actions,
        vec![send("a"), send("b")]
    );
    assert!(render_tables(&ssa).contains("S1\t\ta, b\n"));
}

#[test]
fn minimal_chart_without_transitions() {
    let doc = native(r#"<statechart id="M"><initial/><final/></statechart>"#).unwrap();
    let ssa = synthesize_ssa(&doc).unwrap().automata.remove(0);
    assert_eq!(ssa.states.len(), 2);
    assert!(ssa.transitions.is_empty());
    assert_eq!(validate(&ssa), vec![]);
}

#[test]
fn marker_errors() {
    let two = r#"<statechart id="M"><initial name="A"/><initial name="B"/><final/></statechart>"#;
    assert_eq!(native(two).unwrap_err().code(), "ambiguous-initial-state");
    let none = r#"<statechart id="M"><state name="A"/><final/></statechart>"#;
    assert_eq!(native(none).unwrap_err().code(), "missing-initial-state");
    assert_eq!(native("<statechart").unwrap_err().code(), "malformed-xml");
}

#[test]
fn unknown_elements_warn() {
    let doc =
        native(r#"<statechart id="M"><layout/><initial/><final><note/></final></statechart>"#)
            .unwrap();
    assert_eq!(doc.warnings.len(), 2);
    assert!(doc
        .warnings
        .iter()
        .all(|w| w.code == DiagCode::UnknownElement));
}

#[test]
fn rejected_constructs() {
    let action = r#"<statechart id="M"><initial/><final/>
        <transition source="S0" target="End" action="x := 1"/></statechart>"#;
    assert_eq!(
        synthesize_ssa(&native(action).unwrap()).unwrap_err().code(),
        "transition-action"
    );
    let bad_guard = r#"<statechart id="M"><initial/><final/>
        <transition source="S0" target="End" guard="x = = 1"/></statechart>"#;
    let err = synthesize_ssa(&native(bad_guard).unwrap()).unwrap_err();
    assert_eq!(err.code(), "expression-parse-error");
    assert!(err.to_string().contains("S0 -> End"), "{err}");
    let untyped = r#"<statechart id="M"><initial/><final/>
        <transition source="S0" target="End" guard="x = 1"/></statechart>"#;
    assert_eq!(
        synthesize_ssa(&native(untyped).unwrap())
            .unwrap_err()
            .code(),
        "invalid-model"
    );
    let dangling = r#"<statechart id="M"><initial/><final/>
        <transition source="S0" target="Nowhere"/></statechart>"#;
    assert_eq!(
        synthesize_ssa(&native(dangling).unwrap())
            .unwrap_err()
            .code(),
        "unresolved-state"
    );
}

#[test]
fn guards_and_functions_are_shared() {
    let ssa = single(
        r#"<statechart id="A">
             <variable name="n" type="integer" init="0"/>
             <function name="bump">n := n + 1; log()</function>
             <initial/>
             <state name="S1"><entry>bump(); n := 0</entry></state>
             <state name="S2"><entry>n := 0</entry><entry>bump()</entry></state>
             <final/>
             <transition source="S0" target="S1"/>
             <transition source="S1" target="S2" guard="[n > 1]"/>
             <transition source="S1" target="End" guard="n > 1"/>
             <transition source="S2" target="End" event="go"/></statechart>"#,
    );
    assert_eq!(ssa.condition_scheme.conditions.len(), 1);
    assert_eq!(ssa.transitions[1].guard, ssa.transitions[2].guard);
    assert!(ssa.transitions[1]
        .guard
        .as_deref()
        .unwrap()
        .starts_with("A_C_"));
    let funcs = &ssa.condition_scheme.func_actions;
    let ids: Vec<(&str, Option<&str>)> = funcs
        .iter()
        .map(|f| (f.id.as_str(), f.name.as_deref()))
        .collect();
    assert_eq!(
        ids,
        [
            ("A_Func1", Some("bump")),
            ("A_Func2", Some("log")),
            ("A_Func3", None)
        ]
    );
    assert_eq!(funcs[1].body, FuncBody::External);
    assert_eq!(
        ssa.state("A_S2").unwrap().entry_actions,
        vec![
            ActionRef::Function("A_Func3".into()),
            ActionRef::Function("A_Func1".into())
        ]
    );
}

#[test]
fn composite_states_yield_bindings() {
    let doc = native(
        r#"<statechart id="P"><initial/>
             <state name="C">
               <statechart id="Q"><initial/><state name="W"/><final/>
                 <transition source="S0" target="W"/>
                 <transition source="W" target="End" event="done"/></statechart>
             </state>
             <final/>
             <transition source="S0" target="C"/>
             <transition source="C" target="End"/></statechart>"#,
    )
    .unwrap();
    assert_eq!(doc.root.chart_count(), 2);
    let net = synthesize_ssa(&doc).unwrap();
    assert_eq!(net.automata.len(), 2);
    assert_eq!(
        net.bindings,
        vec![Binding {
            parent: 0,
            state: "P_C".into(),
            child: 1
        }]
    );
    let again = native(
        r#"<statechart id="P"><initial/>
             <state name="C"><statechart id="P"><initial/><final/></statechart></state>
             <final/></statechart>"#,
    )
    .unwrap();
    assert_eq!(
        synthesize_ssa(&again).unwrap_err().code(),
        "non-tree-composites"
    );
}
