//! Hand-assembled reference automata.

use crate::expr::{parse_expr, GenericType};
use crate::ir::*;

/// The ATM main controller (client identification use case), assembled
/// directly from its transition and output tables.
pub fn atm_controller() -> Ssa {
    let mut ssa = Ssa::new("A1");
    let send = |e: &str| ActionRef::SendEvent {
        event: e.into(),
        target: None,
    };
    let st = |name: &str, kind| StateDef::new(format!("A1_{name}"), name, kind);
    ssa.states = vec![
        st("S0", StateKind::Initial),
        st("S1", StateKind::Ordinary).with_actions(vec![send("ev1"), send("ev2")]),
        st("S2", StateKind::Ordinary).with_actions(vec![send("ev4"), send("ev5")]),
        st("S3", StateKind::Ordinary).with_actions(vec![ActionRef::Function("A1_Func1".into())]),
        st("S4", StateKind::Ordinary).with_actions(vec![send("ev9")]),
        st("S5", StateKind::Ordinary).with_actions(vec![send("ev10")]),
        st("S6", StateKind::Ordinary).with_actions(vec![send("ev11"), send("ev12")]),
        st("S7", StateKind::Ordinary).with_actions(vec![send("ev14")]),
        st("End", StateKind::Final),
    ];
    ssa.events = ["ev3", "ev7", "ev8", "ev13", "ev15"]
        .into_iter()
        .map(EventDef::new)
        .collect();
    ssa.condition_scheme.conditions = [
        ("A1_C1", "PIN_code_OK = true"),
        ("A1_C2", "errors = 3"),
        ("A1_C3", "PIN_code_OK = false and errors < 3"),
    ]
    .into_iter()
    .map(|(id, text)| Condition {
        id: id.into(),
        expr: parse_expr(text).expect("reference guard parses"),
    })
    .collect();
    ssa.condition_scheme.func_actions = vec![FuncAction {
        id: "A1_Func1".into(),
        name: Some("verifyPINCode".into()),
        body: FuncBody::External,
    }];
    ssa.memory.variables = vec![
        Variable {
            name: "errors".into(),
            ty: GenericType::Integer,
            init: Some(parse_expr("0").expect("literal")),
        },
        Variable {
            name: "PIN_code_OK".into(),
            ty: GenericType::Flag,
            init: None,
        },
    ];
    let t = |s: &str, d: &str| Transition::new(format!("A1_{s}"), format!("A1_{d}"));
    ssa.transitions = vec![
        t("S0", "S1"),
        t("S1", "S2").on("ev3"),
        t("S2", "End").on("ev7"),
        t("S2", "S3").on("ev8"),
        t("S3", "S4").when("A1_C1"),
        t("S3", "S6").when("A1_C2"),
        t("S3", "S5").when("A1_C3"),
        t("S4", "End"),
        t("S5", "S2"),
        t("S6", "S7").on("ev13"),
        t("S7", "End").on("ev15"),
    ];
    ssa
}

pub const ATM_CONTROLLER_CHART: &str =
    include_str!("../../../fixtures/atm/a1_controller.statechart.xml");
pub const ATM_MONITOR_CHART: &str = include_str!("../../../fixtures/atm/a2_monitor.statechart.xml");
pub const ATM_CARD_READER_CHART: &str =
    include_str!("../../../fixtures/atm/a3_card_reader.statechart.xml");
pub const ATM_KEYBOARD_CHART: &str =
    include_str!("../../../fixtures/atm/a4_keyboard.statechart.xml");
pub const ATM_DISPATCH: &str = include_str!("../../../fixtures/atm/atm.dispatch.xml");
pub const ATM_CORRECT_PIN: &str = include_str!("../../../fixtures/atm/correct-pin.events");
pub const ATM_WRONG_PIN_X3: &str = include_str!("../../../fixtures/atm/wrong-pin-x3.events");

/// The four ATM statecharts as pipeline inputs, controller first.
pub fn atm_charts() -> Vec<crate::pipeline::Input> {
    use crate::pipeline::Input;
    vec![
        Input::new("a1_controller.statechart.xml", ATM_CONTROLLER_CHART),
        Input::new("a2_monitor.statechart.xml", ATM_MONITOR_CHART),
        Input::new("a3_card_reader.statechart.xml", ATM_CARD_READER_CHART),
        Input::new("a4_keyboard.statechart.xml", ATM_KEYBOARD_CHART),
    ]
}
