use super::*;
use crate::expr::parse_expr;
use crate::fixtures::*;
use crate::ir::*;
use crate::pim::read_dispatcher;
use crate::pipeline::build_network;

fn atm(script_text: &str) -> (SimSession, EventScript) {
    let net = build_network(&atm_charts()).unwrap();
    let disp = read_dispatcher(ATM_DISPATCH).unwrap();
    let script = parse_script(script_text).unwrap();
    let session = SimSession::instantiate(net, disp, script.stubs.clone()).unwrap();
    (session, script)
}

fn state_of<'a>(s: &'a SimSession, instance: &str) -> &'a str {
    &s.instance(instance).unwrap().state
}

/// Controller states in order of entry, starting from the initial one.
fn controller_states(s: &SimSession) -> Vec<String> {
    let mut out = vec!["A1_S0".to_string()];
    for e in s.trace() {
        if e.instance == "controller" && e.kind == TraceKind::Transition {
            let dest = e.detail.split(" -> ").nth(1).unwrap();
            out.push(dest.split(' ').next().unwrap().to_string());
        }
    }
    out
}

fn sent(s: &SimSession, instance: &str) -> Vec<String> {
    s.trace()
        .iter()
        .filter(|e| e.instance == instance && e.kind == TraceKind::SendEvent)
        .map(|e| e.detail.split(' ').next().unwrap().to_string())
        .collect()
}

#[test]
fn instantiate_leaves_initial_states() {
    let (s, _) = atm("@stub verifyPINCode PIN_code_OK := true");
    assert_eq!(state_of(&s, "controller"), "A1_S0");
    assert_eq!(
        s.instance("controller").unwrap().memory["errors"],
        Value::Integer(0)
    );
    assert!(s.trace().is_empty());
    assert!(!s.is_quiescent());
}

#[test]
fn empty_dispatcher_is_a_valid_session() {
    let net = build_network(&atm_charts()).unwrap();
    let mut s =
        SimSession::instantiate(net, DispatcherDoc::default(), StubBindings::default()).unwrap();
    s.run_to_quiescence().unwrap();
    assert!(s.trace().is_empty());
    assert!(s.instances().is_empty());
}

#[test]
fn missing_stub_names_function() {
    let net = build_network(&atm_charts()).unwrap();
    let disp = read_dispatcher(ATM_DISPATCH).unwrap();
    let err = SimSession::instantiate(net, disp, StubBindings::default()).unwrap_err();
    assert_eq!(err.code(), "missing-stub");
    assert!(err.to_string().contains("A1_Func1"), "{err}");
}

#[test]
fn ev3_at_s1_moves_to_s2_and_prompts() {
    let (mut s, _) = atm("@stub verifyPINCode PIN_code_OK := true");
    s.run_to_quiescence().unwrap();
    assert_eq!(state_of(&s, "controller"), "A1_S1");
    let before = s.trace().len();
    s.inject_event("controller", "ev3").unwrap();
    assert_eq!(state_of(&s, "controller"), "A1_S2");
    let details: Vec<String> = s.trace()[before..]
        .iter()
        .filter(|e| e.kind == TraceKind::SendEvent)
        .map(|e| e.detail.clone())
        .collect();
    assert_eq!(details, ["ev4 -> monitor", "ev5 -> keyboard"]);
}

#[test]
fn unmatched_event_is_dropped() {
    let (mut s, _) = atm("@stub verifyPINCode PIN_code_OK := true");
    s.inject_event("controller", "ev3").unwrap();
    s.inject_event("controller", "ev3").unwrap();
    assert_eq!(state_of(&s, "controller"), "A1_S2");
    let last = s.trace().last().unwrap();
    assert_eq!(last.kind, TraceKind::EventDropped);
    assert_eq!(last.detail, "ev3 (no-transition)");
}

#[test]
fn correct_pin_script() {
    let (mut s, script) = atm(ATM_CORRECT_PIN);
    s.run_script(&script).unwrap();
    assert_eq!(
        controller_states(&s),
        ["A1_S0", "A1_S1", "A1_S2", "A1_S3", "A1_S4", "A1_End"]
    );
    assert_eq!(sent(&s, "controller"), ["ev1", "ev2", "ev4", "ev5", "ev9"]);
}

#[test]
fn s3_with_pin_ok_fires_one_guard_then_completes() {
    let (mut s, _) = atm("@stub verifyPINCode PIN_code_OK := true");
    s.inject_event("controller", "ev3").unwrap();
    let before = s.trace().len();
    s.inject_event("controller", "ev8").unwrap();
    let transitions: Vec<&str> = s.trace()[before..]
        .iter()
        .filter(|e| e.instance == "controller" && e.kind == TraceKind::Transition)
        .map(|e| e.detail.as_str())
        .collect();
    assert_eq!(transitions.len(), 3);
    assert!(transitions[1].starts_with("A1_S3 -> A1_S4 ["));
    assert_eq!(transitions[2], "A1_S4 -> A1_End");
}

#[test]
fn quiescent_run_is_a_no_op() {
    let (mut s, _) = atm("@stub verifyPINCode PIN_code_OK := true");
    s.run_to_quiescence().unwrap();
    assert!(s.is_quiescent());
    let len = s.trace().len();
    let step = s.step();
    s.run_to_quiescence().unwrap();
    assert_eq!(s.trace().len(), len);
    assert_eq!(s.step(), step);
    assert!(s.snapshot().recent.is_empty());
}

#[test]
fn wrong_pin_three_times_confiscates() {
    let (mut s, script) = atm(ATM_WRONG_PIN_X3);
    s.run_script(&script).unwrap();
    let c = s.instance("controller").unwrap();
    assert_eq!(c.state, "A1_End");
    assert_eq!(c.memory["errors"], Value::Integer(3));
    let states = controller_states(&s);
    assert_eq!(
        states,
        [
            "A1_S0", "A1_S1", "A1_S2", "A1_S3", "A1_S5", "A1_S2", "A1_S3", "A1_S5", "A1_S2",
            "A1_S3", "A1_S6", "A1_S7", "A1_End"
        ]
    );
    let sends = sent(&s, "controller");
    let tail: Vec<&str> = sends
        .iter()
        .rev()
        .take(3)
        .rev()
        .map(String::as_str)
        .collect();
    assert_eq!(tail, ["ev11", "ev12", "ev14"]);
}

#[test]
fn snapshot_offers_possible_events() {
    let (mut s, _) = atm("@stub verifyPINCode PIN_code_OK := true");
    s.run_to_quiescence().unwrap();
    let snap = s.snapshot();
    assert!(snap.quiescent);
    let ev3 = snap
        .possible_events
        .iter()
        .find(|p| p.event == "ev3")
        .unwrap();
    assert_eq!(ev3.instance, "controller");
    assert_eq!(ev3.description.as_deref(), Some("Card inserted"));
    let controller = snap
        .instances
        .iter()
        .find(|i| i.name == "controller")
        .unwrap();
    assert_eq!(controller.state_name, "S1");
    // Events offered are exactly those with a transition from a current state.
    for p in &snap.possible_events {
        let inst = s.instance(&p.instance).unwrap();
        let ssa = &s.network().automata[inst.automaton];
        assert!(ssa
            .outgoing(&inst.state)
            .iter()
            .any(|(_, t)| t.event.as_deref() == Some(p.event.as_str())));
    }
}

#[test]
fn injection_errors() {
    let (mut s, _) = atm("@stub verifyPINCode PIN_code_OK := true");
    assert_eq!(
        s.inject_event("nobody", "ev3").unwrap_err().code(),
        "unknown-instance"
    );
    assert_eq!(
        s.inject_event("controller", "ev99").unwrap_err().code(),
        "unknown-event"
    );
}

fn single(ssa: Ssa) -> FlatNetwork {
    FlatNetwork {
        automata: vec![ssa],
        activation_edges: vec![],
    }
}

#[test]
fn guard_conflict_names_both_transitions() {
    let mut ssa = Ssa::new("G");
    ssa.states = vec![
        StateDef::new("G_S0", "S0", StateKind::Initial),
        StateDef::new("G_A", "A", StateKind::Ordinary),
        StateDef::new("G_B", "B", StateKind::Ordinary),
        StateDef::new("G_End", "End", StateKind::Final),
    ];
    ssa.condition_scheme.conditions = vec![
        Condition {
            id: "G_C1".into(),
            expr: parse_expr("true").unwrap(),
        },
        Condition {
            id: "G_C2".into(),
            expr: parse_expr("1 < 2").unwrap(),
        },
    ];
    ssa.transitions = vec![
        Transition::new("G_S0", "G_A").when("G_C1"),
        Transition::new("G_S0", "G_B").when("G_C2"),
        Transition::new("G_A", "G_End"),
        Transition::new("G_B", "G_End"),
    ];
    let net = single(ssa);
    let disp = default_dispatcher(&net);
    let mut s = SimSession::instantiate(net, disp, StubBindings::default()).unwrap();
    let err = s.run_to_quiescence().unwrap_err();
    assert_eq!(err.code(), "guard-conflict");
    let SimError::GuardConflict { transitions, .. } = &err else {
        unreachable!()
    };
    assert_eq!(transitions, &["G_S0 -> G_A [G_C1]", "G_S0 -> G_B [G_C2]"]);
    assert_eq!(s.trace().last().unwrap().kind, TraceKind::Conflict);
}

#[test]
fn livelock_hits_step_budget() {
    let mut ssa = Ssa::new("L");
    ssa.states = vec![
        StateDef::new("L_S0", "S0", StateKind::Initial),
        StateDef::new("L_A", "A", StateKind::Ordinary),
        StateDef::new("L_B", "B", StateKind::Ordinary),
        StateDef::new("L_End", "End", StateKind::Final),
    ];
    ssa.events = vec![EventDef::new("stop")];
    ssa.transitions = vec![
        Transition::new("L_S0", "L_A"),
        Transition::new("L_A", "L_B"),
        Transition::new("L_B", "L_A"),
        Transition::new("L_A", "L_End").on("stop"),
    ];
    let net = single(ssa);
    let disp = default_dispatcher(&net);
    let mut s = SimSession::instantiate(net, disp, StubBindings::default())
        .unwrap()
        .with_max_steps(50);
    let err = s.run_to_quiescence().unwrap_err();
    assert_eq!(err, SimError::StepBudgetExceeded(50));
    assert_eq!(s.step(), 50);
}

#[test]
fn io_actions_use_virtual_console() {
    let mut ssa = Ssa::new("IO");
    ssa.memory.variables = vec![Variable {
        name: "n".into(),
        ty: GenericType::Integer,
        init: None,
    }];
    ssa.io_table.io_actions = vec![
        IoAction {
            id: "IO_in".into(),
            direction: IoDirection::Input,
            mode: IoMode::Stream,
            subject: parse_expr("n").unwrap(),
            destination: "keyboard".into(),
        },
        IoAction {
            id: "IO_out".into(),
            direction: IoDirection::Output,
            mode: IoMode::Gui,
            subject: parse_expr("n * 2").unwrap(),
            destination: "screen".into(),
        },
    ];
    ssa.states = vec![
        StateDef::new("IO_S0", "S0", StateKind::Initial),
        StateDef::new("IO_S1", "S1", StateKind::Ordinary).with_actions(vec![
            ActionRef::Inline(Stmt::Io("IO_in".into())),
            ActionRef::Inline(Stmt::Io("IO_out".into())),
        ]),
        StateDef::new("IO_End", "End", StateKind::Final),
    ];
    ssa.transitions = vec![
        Transition::new("IO_S0", "IO_S1"),
        Transition::new("IO_S1", "IO_End"),
    ];
    let net = single(ssa);
    let disp = default_dispatcher(&net);
    let mut s =
        SimSession::instantiate(net.clone(), disp.clone(), StubBindings::default()).unwrap();
    s.push_input("IO_in", Value::Integer(21));
    s.run_to_quiescence().unwrap();
    let io: Vec<&str> = s
        .trace()
        .iter()
        .filter(|e| e.kind == TraceKind::Io)
        .map(|e| e.detail.as_str())
        .collect();
    assert_eq!(io, ["IO_in <- 21", "IO_out -> 42"]);

    let mut dry = SimSession::instantiate(net, disp, StubBindings::default()).unwrap();
    assert_eq!(
        dry.run_to_quiescence().unwrap_err(),
        SimError::MissingInput("IO_in".into())
    );
}

fn two_level() -> FlatNetwork {
    let mut p = Ssa::new("P");
    p.states = vec![
        StateDef::new("P_S0", "S0", StateKind::Initial),
        StateDef::new("P_S1", "S1", StateKind::Ordinary),
        StateDef::new("P_S2", "S2", StateKind::Ordinary),
        StateDef::new("P_End", "End", StateKind::Final),
    ];
    p.events = vec![EventDef::new("abort")];
    p.transitions = vec![
        Transition::new("P_S0", "P_S1"),
        Transition::new("P_S1", "P_S2"),
        Transition::new("P_S1", "P_End").on("abort"),
    ];
    let mut c = Ssa::new("C");
    c.states = vec![
        StateDef::new("C_S0", "S0", StateKind::Initial),
        StateDef::new("C_A", "A", StateKind::Ordinary),
        StateDef::new("C_End", "End", StateKind::Final),
    ];
    c.events = vec![EventDef::new("go"), EventDef::new("abort")];
    c.transitions = vec![
        Transition::new("C_S0", "C_A"),
        Transition::new("C_A", "C_End").on("go"),
    ];
    flatten_hierarchy(&HsaNetwork {
        automata: vec![p, c],
        bindings: vec![Binding {
            parent: 0,
            state: "P_S1".into(),
            child: 1,
        }],
    })
    .unwrap()
}

#[test]
fn sub_automaton_completes_its_composite_state() {
    let net = two_level();
    let disp = default_dispatcher(&net);
    let mut s = SimSession::instantiate(net, disp, StubBindings::default()).unwrap();
    s.run_to_quiescence().unwrap();
    assert_eq!(state_of(&s, "P"), "P_S1");
    assert_eq!(state_of(&s, "P/C"), "C_A");
    assert!(s
        .snapshot()
        .possible_events
        .iter()
        .any(|p| p.event == "go" && p.instance == "P"));
    s.inject_event("P", "go").unwrap();
    assert_eq!(state_of(&s, "P/C"), "C_End");
    assert_eq!(state_of(&s, "P"), "P_S2");
    assert!(!s.snapshot().instances[1].active);
}

#[test]
fn parent_event_preempts_sub_automaton() {
    let net = two_level();
    let disp = default_dispatcher(&net);
    let mut s = SimSession::instantiate(net, disp, StubBindings::default()).unwrap();
    // The child declares `abort` but has no transition on it.
    s.inject_event("P", "abort").unwrap();
    assert_eq!(state_of(&s, "P"), "P_End");
    assert!(s.snapshot().possible_events.is_empty());
    s.inject_event("P", "go").unwrap();
    assert_eq!(s.trace().last().unwrap().detail, "go (no-transition)");
}

#[test]
fn identical_runs_have_identical_traces() {
    let run = || {
        let (mut s, script) = atm(ATM_WRONG_PIN_X3);
        s.run_script(&script).unwrap();
        format_trace(s.trace())
    };
    assert_eq!(run(), run());
}

#[test]
fn script_syntax() {
    let s = parse_script("# c\n\n@stub f x := 1; y := 2\n@stub f x := 3\n@input IO 'a'\nobj ev\n")
        .unwrap();
    assert_eq!(s.stubs.functions["f"].len(), 2);
    assert_eq!(s.inputs, [("IO".to_string(), Value::Char('a'))]);
    assert_eq!(
        s.events,
        [ScriptEvent {
            line: 6,
            instance: "obj".into(),
            event: "ev".into()
        }]
    );
    for (bad, line) in [
        ("obj", 1),
        ("obj ev\n@stub f", 2),
        ("@nope f x", 1),
        ("@stub f x :=", 1),
    ] {
        match parse_script(bad).unwrap_err() {
            SimError::Script { line: l, .. } => assert_eq!(l, line, "{bad}"),
            other => panic!("{other}"),
        }
    }
}

#[test]
fn stub_invocations_follow_script_order() {
    let (mut s, _) = atm(
        "@stub verifyPINCode PIN_code_OK := false; errors := errors + 1\n@stub verifyPINCode PIN_code_OK := true",
    );
    for ev in ["ev3", "ev8", "ev8"] {
        s.inject_event("controller", ev).unwrap();
    }
    assert_eq!(state_of(&s, "controller"), "A1_End");
    assert_eq!(
        s.instance("controller").unwrap().memory["errors"],
        Value::Integer(1)
    );
}
