//! Random network generators and a hierarchical reference interpreter
//! shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use amda_core::expr::{
    eval_expr, BinaryOp, CollectionKind, Expr, GenericType, Literal, Stmt, UnaryOp, Value,
};
use amda_core::ir::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const EVENTS: [&str; 4] = ["e0", "e1", "e2", "e3"];

fn x() -> Expr {
    Expr::var("x")
}

fn inc() -> Stmt {
    Stmt::Assign {
        target: "x".into(),
        value: Expr::binary(BinaryOp::Add, x(), Expr::int(1)),
    }
}

fn reset() -> Stmt {
    Stmt::Assign {
        target: "x".into(),
        value: Expr::int(0),
    }
}

/// Adds `x >= k` and `x < k` conditions and returns their ids.
fn guard_pair(ssa: &mut Ssa, k: i64) -> (String, String) {
    let n = ssa.condition_scheme.conditions.len();
    let hi = format!("{}_C{}", ssa.id, n + 1);
    let lo = format!("{}_C{}", ssa.id, n + 2);
    ssa.condition_scheme.conditions.push(Condition {
        id: hi.clone(),
        expr: Expr::binary(BinaryOp::Ge, x(), Expr::int(k)),
    });
    ssa.condition_scheme.conditions.push(Condition {
        id: lo.clone(),
        expr: Expr::binary(BinaryOp::Lt, x(), Expr::int(k)),
    });
    (hi, lo)
}

/// One automaton: S0, S1..Sn, End with an integer counter `x`.
///
/// At most one transition is enabled per state and trigger (alternatives
/// come in complementary guard pairs) and completion transitions only move
/// forward, so runs never conflict or livelock.
fn behavioural_ssa(rng: &mut impl Rng, id: &str) -> Ssa {
    let mut ssa = Ssa::new(id);
    let n = rng.gen_range(2..=4);
    let sid = |i: usize| -> String {
        if i == n + 1 {
            format!("{id}_End")
        } else {
            format!("{id}_S{i}")
        }
    };
    ssa.states
        .push(StateDef::new(sid(0), "S0", StateKind::Initial));
    for i in 1..=n {
        let mut actions = Vec::new();
        if rng.gen_bool(0.5) {
            actions.push(ActionRef::Inline(inc()));
        }
        if rng.gen_bool(0.15) {
            actions.push(ActionRef::Inline(reset()));
        }
        ssa.states.push(
            StateDef::new(sid(i), format!("S{i}"), StateKind::Ordinary).with_actions(actions),
        );
    }
    let end_actions = if rng.gen_bool(0.3) {
        vec![ActionRef::Inline(inc())]
    } else {
        Vec::new()
    };
    ssa.states
        .push(StateDef::new(sid(n + 1), "End", StateKind::Final).with_actions(end_actions));
    ssa.memory.variables.push(Variable {
        name: "x".into(),
        ty: GenericType::Integer,
        init: Some(Expr::int(0)),
    });

    ssa.transitions.push(Transition::new(sid(0), sid(1)));
    let mut used = Vec::new();
    for i in 1..=n {
        let mut events: Vec<&str> = EVENTS.to_vec();
        events.shuffle(rng);
        for ev in events.into_iter().take(rng.gen_range(0..=2)) {
            if !used.contains(&ev) {
                used.push(ev);
            }
            let dest = |rng: &mut dyn rand::RngCore| sid(rng.gen_range(1..=n + 1));
            if rng.gen_bool(0.25) {
                let (hi, lo) = guard_pair(&mut ssa, rng.gen_range(1..=3));
                let (a, b) = (dest(rng), dest(rng));
                ssa.transitions
                    .push(Transition::new(sid(i), a).on(ev).when(hi));
                ssa.transitions
                    .push(Transition::new(sid(i), b).on(ev).when(lo));
            } else {
                let d = dest(rng);
                ssa.transitions.push(Transition::new(sid(i), d).on(ev));
            }
        }
        let forward = |rng: &mut dyn rand::RngCore| sid(rng.gen_range(i + 1..=n + 1));
        match rng.gen_range(0..4) {
            0 | 1 => {}
            2 => {
                let d = forward(rng);
                ssa.transitions.push(Transition::new(sid(i), d));
            }
            _ => {
                let (hi, lo) = guard_pair(&mut ssa, rng.gen_range(1..=3));
                let (a, b) = (forward(rng), forward(rng));
                ssa.transitions.push(Transition::new(sid(i), a).when(hi));
                ssa.transitions.push(Transition::new(sid(i), b).when(lo));
            }
        }
    }
    for ev in EVENTS.iter().filter(|e| used.contains(e)) {
        ssa.events.push(EventDef::new(*ev));
    }
    ssa
}

/// A tree of up to `max_automata` automata; composite states are ordinary
/// states, each refined by at most one child.
pub fn behavioural_tree(rng: &mut impl Rng, max_automata: usize) -> HsaNetwork {
    let count = rng.gen_range(1..=max_automata);
    let automata: Vec<Ssa> = (0..count)
        .map(|k| behavioural_ssa(rng, &format!("H{k}")))
        .collect();
    let mut bindings: Vec<Binding> = Vec::new();
    let mut kept = vec![automata[0].clone()];
    for child in automata.into_iter().skip(1) {
        let mut slots = Vec::new();
        for (p, a) in kept.iter().enumerate() {
            for s in a.states.iter().filter(|s| s.kind == StateKind::Ordinary) {
                if !bindings.iter().any(|b| b.parent == p && b.state == s.id) {
                    slots.push((p, s.id.clone()));
                }
            }
        }
        let Some((parent, state)) = slots.choose(rng).cloned() else {
            break;
        };
        bindings.push(Binding {
            parent,
            state,
            child: kept.len(),
        });
        kept.push(child);
    }
    HsaNetwork {
        automata: kept,
        bindings,
    }
}

/// Events some automaton of the tree declares.
pub fn declared_events(net: &HsaNetwork) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for a in &net.automata {
        for e in &a.events {
            if !out.contains(&e.id) {
                out.push(e.id.clone());
            }
        }
    }
    out
}

pub fn random_script(rng: &mut impl Rng, events: &[String], max_len: usize) -> Vec<String> {
    if events.is_empty() {
        return Vec::new();
    }
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| events.choose(rng).expect("non-empty").clone())
        .collect()
}

fn int_expr(rng: &mut impl Rng, depth: u32) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => Expr::int(rng.gen_range(0..1000)),
            1 => Expr::var("n"),
            _ => Expr::Size(Box::new(Expr::var("o"))),
        };
    }
    match rng.gen_range(0..6) {
        0 => Expr::unary(UnaryOp::Neg, Expr::var("n")),
        1 => int_expr(rng, 0),
        k => {
            let op = [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div][k - 2];
            Expr::binary(op, int_expr(rng, depth - 1), int_expr(rng, depth - 1))
        }
    }
}

fn real_expr(rng: &mut impl Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..2) {
            0 => Expr::Lit(Literal::Real(rng.gen_range(0..400) as f64 / 8.0)),
            _ => Expr::var("r"),
        };
    }
    let op = *[BinaryOp::Add, BinaryOp::Mul, BinaryOp::Sub]
        .choose(rng)
        .expect("non-empty");
    Expr::binary(op, real_expr(rng, depth - 1), real_expr(rng, depth - 1))
}

fn flag_expr(rng: &mut impl Rng, depth: u32) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => Expr::flag(rng.gen_bool(0.5)),
            1 => Expr::var("f"),
            _ => Expr::binary(
                BinaryOp::Eq,
                Expr::var("s"),
                Expr::Lit(Literal::Str("a<b & \"q\"".into())),
            ),
        };
    }
    match rng.gen_range(0..6) {
        0 => Expr::unary(UnaryOp::Not, flag_expr(rng, depth - 1)),
        1 => {
            let op = *[
                BinaryOp::Lt,
                BinaryOp::Le,
                BinaryOp::Gt,
                BinaryOp::Ge,
                BinaryOp::Eq,
                BinaryOp::Ne,
            ]
            .choose(rng)
            .expect("non-empty");
            Expr::binary(op, int_expr(rng, depth - 1), int_expr(rng, depth - 1))
        }
        2 => Expr::binary(BinaryOp::Gt, real_expr(rng, depth - 1), Expr::var("r")),
        3 => Expr::binary(BinaryOp::Eq, Expr::var("c"), Expr::Lit(Literal::Char('\''))),
        4 => Expr::binary(
            BinaryOp::And,
            flag_expr(rng, depth - 1),
            flag_expr(rng, depth - 1),
        ),
        _ => Expr::binary(
            BinaryOp::Or,
            flag_expr(rng, depth - 1),
            flag_expr(rng, depth - 1),
        ),
    }
}

/// Adds variables of every generic type, extra conditions, function and io
/// actions, sends and event descriptions to an automaton.
pub fn enrich(rng: &mut impl Rng, ssa: &mut Ssa) {
    let id = ssa.id.clone();
    let vars = [
        (
            "n",
            GenericType::Integer,
            Some(Expr::int(rng.gen_range(0..10))),
        ),
        ("r", GenericType::Real, Some(Expr::Lit(Literal::Real(0.5)))),
        ("f", GenericType::Flag, None),
        ("c", GenericType::Char, Some(Expr::Lit(Literal::Char('a')))),
        (
            "s",
            GenericType::String,
            Some(Expr::Lit(Literal::Str("x&y".into()))),
        ),
        (
            "o",
            GenericType::OrdCollect,
            Some(Expr::Collection(
                CollectionKind::Sequence,
                vec![Expr::int(1), Expr::int(2)],
            )),
        ),
        ("u", GenericType::UnordCollect, None),
    ];
    for (name, ty, init) in vars {
        if rng.gen_bool(0.8) || matches!(name, "n" | "r" | "f" | "c" | "s" | "o") {
            ssa.memory.variables.push(Variable {
                name: name.into(),
                ty,
                init,
            });
        }
    }
    ssa.memory.variables.shuffle(rng);
    for k in 0..rng.gen_range(1..=3) {
        ssa.condition_scheme.conditions.push(Condition {
            id: format!("{id}_R{k}"),
            expr: {
                let depth = rng.gen_range(0..=3);
                flag_expr(rng, depth)
            },
        });
    }
    let guards: Vec<String> = ssa
        .condition_scheme
        .conditions
        .iter()
        .map(|c| c.id.clone())
        .collect();
    for t in ssa.transitions.iter_mut() {
        if t.guard.is_none() && rng.gen_bool(0.2) {
            t.guard = guards.choose(rng).cloned();
        }
    }
    let input = format!("{id}_IO1");
    let output = format!("{id}_IO2");
    ssa.io_table.io_actions.push(IoAction {
        id: input.clone(),
        direction: IoDirection::Input,
        mode: if rng.gen_bool(0.5) {
            IoMode::Stream
        } else {
            IoMode::Gui
        },
        subject: Expr::var("n"),
        destination: "keyboard".into(),
    });
    ssa.io_table.io_actions.push(IoAction {
        id: output.clone(),
        direction: IoDirection::Output,
        mode: if rng.gen_bool(0.5) {
            IoMode::Stream
        } else {
            IoMode::Gui
        },
        subject: int_expr(rng, 2),
        destination: "screen <main>".into(),
    });
    let external = format!("{id}_Func1");
    let body = format!("{id}_Func2");
    ssa.condition_scheme.func_actions.push(FuncAction {
        id: external.clone(),
        name: Some(format!("check{}", rng.gen_range(0..100))),
        body: FuncBody::External,
    });
    ssa.condition_scheme.func_actions.push(FuncAction {
        id: body.clone(),
        name: None,
        body: FuncBody::Statements(vec![
            Stmt::Assign {
                target: "n".into(),
                value: int_expr(rng, 2),
            },
            Stmt::Io(output.clone()),
            Stmt::Send {
                event: "out1".into(),
                target: None,
            },
        ]),
    });
    for s in ssa
        .states
        .iter_mut()
        .filter(|s| s.kind == StateKind::Ordinary)
    {
        match rng.gen_range(0..5) {
            0 => s.entry_actions.push(ActionRef::Function(external.clone())),
            1 => s.entry_actions.push(ActionRef::Function(body.clone())),
            2 => s.entry_actions.push(ActionRef::SendEvent {
                event: format!("out{}", rng.gen_range(0..3)),
                target: None,
            }),
            3 => s
                .entry_actions
                .push(ActionRef::Inline(Stmt::Io(input.clone()))),
            _ => s.entry_actions.push(ActionRef::Inline(Stmt::Assign {
                target: "f".into(),
                value: flag_expr(rng, 2),
            })),
        }
    }
    for e in ssa.events.iter_mut() {
        if rng.gen_bool(0.5) {
            e.description = Some(format!("event '{}' <{}> & more", e.id, rng.gen_range(0..9)));
        }
    }
}

/// A flattened network with rich components, for round-trip checks.
pub fn rich_network(rng: &mut impl Rng) -> FlatNetwork {
    let mut tree = behavioural_tree(rng, 4);
    for a in tree.automata.iter_mut() {
        enrich(rng, a);
    }
    flatten_hierarchy(&tree).expect("generated trees are well formed")
}

/// `(automaton, from, to, event)` of one transition, in original states.
pub type Move = (String, String, String, Option<String>);

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub state: String,
    /// Composite state whose child has completed.
    pub completed: bool,
    pub active: bool,
    pub x: Value,
}

enum Msg {
    Event(String),
    Done(String),
}

struct Node {
    state: String,
    completed: bool,
    child: Option<usize>,
    memory: BTreeMap<String, Value>,
}

/// Direct interpreter of a hierarchical network: composite states run
/// their child in place, and a child reaching a final state posts a
/// completion notice to its parent through the shared queue.
pub struct Hierarchy<'a> {
    net: &'a HsaNetwork,
    nodes: Vec<Node>,
    order: Vec<usize>,
    queue: VecDeque<(usize, Msg)>,
    pub moves: Vec<Move>,
}

impl<'a> Hierarchy<'a> {
    pub fn new(net: &'a HsaNetwork) -> Self {
        let nodes = net
            .automata
            .iter()
            .map(|a| {
                let mut memory = BTreeMap::new();
                for v in &a.memory.variables {
                    let init = v
                        .init
                        .as_ref()
                        .expect("generated variables are initialized");
                    memory.insert(v.name.clone(), eval_expr(init, &memory).unwrap());
                }
                Node {
                    state: a.initial_state().unwrap().id.clone(),
                    completed: false,
                    child: None,
                    memory,
                }
            })
            .collect();
        let mut order = Vec::new();
        let mut stack = vec![0usize];
        while let Some(k) = stack.pop() {
            order.push(k);
            let kids: Vec<usize> = net
                .bindings
                .iter()
                .filter(|b| b.parent == k)
                .map(|b| b.child)
                .collect();
            stack.extend(kids.into_iter().rev());
        }
        Hierarchy {
            net,
            nodes,
            order,
            queue: VecDeque::new(),
            moves: Vec::new(),
        }
    }

    fn parent(&self, k: usize) -> Option<(usize, &str)> {
        self.net
            .bindings
            .iter()
            .find(|b| b.child == k)
            .map(|b| (b.parent, b.state.as_str()))
    }

    fn refinement(&self, k: usize, state: &str) -> Option<usize> {
        self.net
            .bindings
            .iter()
            .find(|b| b.parent == k && b.state == state)
            .map(|b| b.child)
    }

    fn live(&self, k: usize) -> bool {
        match self.parent(k) {
            None => true,
            Some((p, _)) => self.nodes[p].child == Some(k) && self.live(p),
        }
    }

    fn holds(&self, k: usize, t: &Transition) -> bool {
        match &t.guard {
            None => true,
            Some(g) => {
                let c = self.net.automata[k].condition(g).expect("declared guard");
                eval_expr(&c.expr, &self.nodes[k].memory).unwrap() == Value::Flag(true)
            }
        }
    }

    fn candidates(&self, k: usize, trigger: Option<&str>) -> Vec<Transition> {
        let node = &self.nodes[k];
        let waiting = self.refinement(k, &node.state).is_some() && !node.completed;
        if trigger.is_none() && waiting {
            return Vec::new();
        }
        let found: Vec<Transition> = self.net.automata[k]
            .transitions
            .iter()
            .filter(|t| t.source == node.state && t.event.as_deref() == trigger)
            .filter(|t| self.holds(k, t))
            .cloned()
            .collect();
        assert!(found.len() <= 1, "generated networks never conflict");
        found
    }

    fn fire(&mut self, k: usize, t: Transition) {
        self.moves.push((
            self.net.automata[k].id.clone(),
            t.source.clone(),
            t.destination.clone(),
            t.event.clone(),
        ));
        let node = &mut self.nodes[k];
        node.state = t.destination.clone();
        node.completed = false;
        node.child = None;
        let ssa = &self.net.automata[k];
        let st = ssa.state(&t.destination).unwrap();
        for a in &st.entry_actions {
            let ActionRef::Inline(Stmt::Assign { target, value }) = a else {
                panic!("behavioural networks only assign");
            };
            let v = eval_expr(value, &self.nodes[k].memory).unwrap();
            self.nodes[k].memory.insert(target.clone(), v);
        }
        if st.kind == StateKind::Final {
            if let Some((p, s)) = self.parent(k) {
                let s = s.to_string();
                self.queue.push_back((p, Msg::Done(s)));
            }
        }
        if let Some(c) = self.refinement(k, &t.destination) {
            let child = &mut self.nodes[c];
            child.state = self.net.automata[c].initial_state().unwrap().id.clone();
            child.completed = false;
            child.child = None;
            self.nodes[k].child = Some(c);
        }
    }

    pub fn run(&mut self) {
        loop {
            let next = self
                .order
                .iter()
                .copied()
                .filter(|&k| self.live(k))
                .find_map(|k| self.candidates(k, None).pop().map(|t| (k, t)));
            if let Some((k, t)) = next {
                self.fire(k, t);
                continue;
            }
            let Some((k, msg)) = self.queue.pop_front() else {
                return;
            };
            if !self.live(k) {
                continue;
            }
            match msg {
                Msg::Done(s) => {
                    let node = &mut self.nodes[k];
                    if node.state == s && !node.completed {
                        node.completed = true;
                        node.child = None;
                    }
                }
                Msg::Event(ev) => {
                    let mut chain = vec![k];
                    while let Some(c) = self.nodes[*chain.last().unwrap()].child {
                        chain.push(c);
                    }
                    if let Some((j, t)) = chain
                        .iter()
                        .rev()
                        .find_map(|&j| self.candidates(j, Some(&ev)).pop().map(|t| (j, t)))
                    {
                        self.fire(j, t);
                    }
                }
            }
        }
    }

    pub fn inject(&mut self, event: &str) {
        self.run();
        self.queue.push_back((0, Msg::Event(event.to_string())));
        self.run();
    }

    pub fn config(&self) -> BTreeMap<String, Config> {
        self.net
            .automata
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let n = &self.nodes[k];
                (
                    a.id.clone(),
                    Config {
                        state: n.state.clone(),
                        completed: n.completed,
                        active: self.live(k),
                        x: n.memory["x"].clone(),
                    },
                )
            })
            .collect()
    }
}

fn automaton_of(instance: &str) -> &str {
    instance.rsplit('/').next().unwrap_or(instance)
}

/// Transition entries of a flattened run in original states: a dummy state
/// reads as its composite state and moves into dummy states are dropped.
pub fn project(net: &FlatNetwork, trace: &[amda_core::sim::TraceEntry]) -> Vec<Move> {
    use amda_core::sim::TraceKind;
    let mut out = Vec::new();
    for e in trace.iter().filter(|e| e.kind == TraceKind::Transition) {
        let aid = automaton_of(&e.instance);
        let ssa = net.automaton(aid).unwrap();
        let (from, rest) = e.detail.split_once(" -> ").unwrap();
        let mut words = rest.split(' ');
        let to = words.next().unwrap();
        let event = match words.next() {
            Some("on") => words.next().map(str::to_string),
            _ => None,
        };
        if ssa.state(to).unwrap().kind == StateKind::Dummy {
            continue;
        }
        let from = if ssa.state(from).unwrap().kind == StateKind::Dummy {
            ssa.dummy_origin(from).unwrap()
        } else {
            from
        };
        out.push((aid.to_string(), from.to_string(), to.to_string(), event));
    }
    out
}

/// Final configuration of a flattened run in original states.
pub fn flat_config(session: &amda_core::sim::SimSession) -> BTreeMap<String, Config> {
    let net = session.network();
    let snapshot = session.snapshot();
    snapshot
        .instances
        .iter()
        .map(|v| {
            let ssa = net.automaton(&v.automaton).unwrap();
            let dummy = ssa.state(&v.state).unwrap().kind == StateKind::Dummy;
            let state = if dummy {
                ssa.dummy_origin(&v.state).unwrap().to_string()
            } else {
                v.state.clone()
            };
            (
                v.automaton.clone(),
                Config {
                    state,
                    completed: dummy,
                    active: v.active,
                    x: v.variables["x"].clone(),
                },
            )
        })
        .collect()
}
