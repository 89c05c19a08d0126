//! One class per automaton: memory fields, structure tables, the
//! transition function and the entry-action methods.

use crate::expr::{Expr, GenericType};
use crate::ir::{ActionRef, FuncBody, IoDirection, IoMode, StateDef, StateKind, Transition};
use crate::psm::{PsmAutomaton, PsmDocument};

use super::lower::{quote, Lowering};
use super::runtime::{Code, Lang};
use super::{state_ident, CodegenError};

fn null_or(s: Option<&str>) -> String {
    s.map(quote).unwrap_or_else(|| "null".to_string())
}

struct Emitter<'a> {
    lang: &'a Lang,
    psm: &'a PsmDocument,
    a: &'a PsmAutomaton,
    low: Lowering<'a>,
}

impl Emitter<'_> {
    fn id(&self) -> &str {
        &self.a.ssa.id
    }

    fn guard(&self, id: &str) -> Result<&Expr, CodegenError> {
        self.a
            .ssa
            .condition(id)
            .map(|c| &c.expr)
            .ok_or_else(|| CodegenError::UnknownReference {
                automaton: self.id().to_string(),
                what: format!("condition `{id}`"),
            })
    }

    fn state(&self, id: &str) -> Result<&StateDef, CodegenError> {
        self.a
            .ssa
            .state(id)
            .ok_or_else(|| CodegenError::UnknownReference {
                automaton: self.id().to_string(),
                what: format!("state `{id}`"),
            })
    }

    fn is_state(&self, expr: &str) -> String {
        format!("_cstate.{}({})", self.lang.equals(), quote(expr))
    }

    fn event_test(&self, var: &str, ev: &str) -> String {
        format!("{var}.{}({})", self.lang.equals(), quote(ev))
    }

    fn fields(&self, code: &mut Code) -> Result<(), CodegenError> {
        let mut vars: Vec<_> = self.a.variables.iter().collect();
        vars.sort_by(|x, y| x.name.cmp(&y.name));
        for v in &vars {
            let init = match (&v.init, v.generic) {
                (Some(e), _) => Some(self.low.expr(e)?),
                (None, Some(GenericType::OrdCollect)) => Some("ordered()".to_string()),
                (None, Some(GenericType::UnordCollect)) => {
                    Some(format!("new {}()", self.lang.unordered))
                }
                (None, _) => None,
            };
            match init {
                Some(i) => code.line(&format!("private {} {}={i};", v.platform_type, v.name)),
                None => code.line(&format!("private {} {};", v.platform_type, v.name)),
            }
        }
        if !vars.is_empty() {
            code.line("");
        }
        let ro = self.lang.readonly();
        code.line(&format!(
            "public {ro} ConditionScheme conditionScheme = new ConditionScheme();"
        ));
        code.line(&format!("public {ro} Memory memory = new Memory();"));
        code.line(&format!("public {ro} IOSystem ioSystem = new IOSystem();"));
        Ok(())
    }

    fn action_object(&self, a: &ActionRef) -> Result<String, CodegenError> {
        Ok(match a {
            ActionRef::Inline(s) => {
                format!("new InlineAction({})", quote(&crate::expr::pretty_stmt(s)))
            }
            ActionRef::Function(key) => {
                format!("new CallAction({})", quote(&self.low.function_method(key)?))
            }
            ActionRef::SendEvent { event, target } => format!(
                "new SendEvent({}, {})",
                quote(event),
                null_or(target.as_deref())
            ),
            ActionRef::Activate { child, .. } => format!("new ActivateAction({})", quote(child)),
        })
    }

    fn constructor(&self, code: &mut Code) -> Result<(), CodegenError> {
        let ssa = &self.a.ssa;
        let lang = self.lang;
        let s = lang.string();
        let class = format!("Phsa{}", ssa.id);
        let initial = ssa
            .initial_state()
            .map(|st| state_ident(&st.id))
            .unwrap_or_default();
        let args = format!(
            "name, {}, dispatcher, parent, {}",
            quote(&ssa.id),
            quote(&initial)
        );
        if lang.java() {
            code.open(&format!(
                "public {class}({s} name, Dispatcher dispatcher, ClassPHSA parent) {{"
            ));
            code.line(&format!("super({args});"));
        } else {
            code.open(&format!(
                "public {class}({s} name, Dispatcher dispatcher, ClassPHSA parent) : base({args}) {{"
            ));
        }
        for st in &ssa.states {
            let actions = st
                .entry_actions
                .iter()
                .map(|a| self.action_object(a))
                .collect::<Result<Vec<_>, _>>()?;
            code.line(&lang.put(
                "states",
                &quote(&state_ident(&st.id)),
                &format!(
                    "new State({}, {}, {}, ordered({}))",
                    quote(&st.id),
                    quote(&st.name),
                    quote(st.kind.as_str()),
                    actions.join(", ")
                ),
            ));
        }
        for e in &ssa.events {
            code.line(&lang.put(
                "events",
                &quote(&e.id),
                &format!(
                    "new Event({}, {})",
                    quote(&e.id),
                    null_or(e.description.as_deref())
                ),
            ));
        }
        for (i, t) in ssa.transitions.iter().enumerate() {
            code.line(&lang.put(
                "transitions",
                &quote(&(i + 1).to_string()),
                &format!(
                    "new Transition({}, {}, {}, {})",
                    quote(&state_ident(&t.source)),
                    null_or(t.event.as_deref()),
                    null_or(t.guard.as_deref()),
                    quote(&state_ident(&t.destination))
                ),
            ));
        }
        let me = self
            .psm
            .automata
            .iter()
            .position(|x| x.ssa.id == ssa.id)
            .unwrap_or(usize::MAX);
        for e in self.psm.activation_edges.iter().filter(|e| e.parent == me) {
            let child = &self.psm.automata[e.child].ssa.id;
            code.line(&lang.put(
                "children",
                &quote(child),
                &format!(
                    "new Phsa{child}(name + {}, dispatcher, this)",
                    quote(&format!("/{child}"))
                ),
            ));
        }
        code.close();
        Ok(())
    }

    /// Statements run when `t` fires from the current state.
    fn fire(&self, code: &mut Code, t: &Transition) -> Result<(), CodegenError> {
        let dest = self.state(&t.destination)?;
        let ident = state_ident(&dest.id);
        code.line(&format!("_cstate={};", quote(&ident)));
        if !dest.entry_actions.is_empty() {
            code.line(&format!("{ident}();"));
        }
        Ok(())
    }

    fn condition(&self, t: &Transition) -> Result<Option<String>, CodegenError> {
        let guard = match &t.guard {
            Some(g) => Some(self.guard(g)?),
            None => None,
        };
        Ok(match (&t.event, guard) {
            (Some(ev), Some(g)) => Some(format!(
                "{} && {}",
                self.event_test("_event", ev),
                self.low.guard_operand(g)?
            )),
            (Some(ev), None) => Some(self.event_test("_event", ev)),
            (None, Some(g)) => Some(self.low.expr(g)?),
            (None, None) => None,
        })
    }

    fn handler(&self, code: &mut Code) -> Result<(), CodegenError> {
        let ssa = &self.a.ssa;
        code.open(&format!(
            "public {}void handler() {{",
            self.lang.overrides()
        ));
        let mut first_state = true;
        for st in ssa.states.iter().filter(|s| s.kind != StateKind::Final) {
            let head = format!("if ({}) {{", self.is_state(&state_ident(&st.id)));
            if first_state {
                code.open(&head);
            } else {
                code.open(&format!("else {head}"));
            }
            first_state = false;
            let out = ssa.outgoing(&st.id);
            if let [(_, t)] = out.as_slice() {
                if t.event.is_none() && t.guard.is_none() {
                    self.fire(code, t)?;
                    code.close();
                    continue;
                }
            }
            for (k, (_, t)) in out.iter().enumerate() {
                let cond = self.condition(t)?.unwrap_or_else(|| "true".to_string());
                if k == 0 {
                    code.open(&format!("if ({cond}) {{"));
                } else {
                    code.open(&format!("else if ({cond}) {{"));
                }
                self.fire(code, t)?;
                code.close();
            }
            code.close();
        }
        code.close();
        Ok(())
    }

    fn enabled(&self, code: &mut Code) -> Result<(), CodegenError> {
        let ssa = &self.a.ssa;
        let lang = self.lang;
        code.open(&format!(
            "protected {}{} enabled({} ev) {{",
            lang.overrides(),
            lang.boolean(),
            lang.string()
        ));
        for st in ssa.states.iter().filter(|s| s.kind != StateKind::Final) {
            let mut terms = Vec::new();
            for (_, t) in ssa.outgoing(&st.id) {
                let Some(ev) = &t.event else { continue };
                let test = self.event_test("ev", ev);
                terms.push(match &t.guard {
                    Some(g) => format!("({test} && {})", self.low.guard_operand(self.guard(g)?)?),
                    None => test,
                });
            }
            if terms.is_empty() {
                continue;
            }
            code.open(&format!("if ({}) {{", self.is_state(&state_ident(&st.id))));
            code.line(&format!("return {};", terms.join(" || ")));
            code.close();
        }
        code.line("return false;");
        code.close();
        Ok(())
    }

    fn entry_methods(&self, code: &mut Code) -> Result<(), CodegenError> {
        for st in &self.a.ssa.states {
            if st.entry_actions.is_empty() {
                continue;
            }
            code.line("");
            code.open(&format!("private void {}() {{", state_ident(&st.id)));
            for a in &st.entry_actions {
                code.line(&self.low.action(a)?);
            }
            code.close();
        }
        Ok(())
    }

    fn function_methods(&self, code: &mut Code) -> Result<(), CodegenError> {
        let virt = if self.lang.java() { "" } else { "virtual " };
        for f in &self.a.ssa.condition_scheme.func_actions {
            code.line("");
            code.open(&format!(
                "protected {virt}void {}() {{",
                super::function_method_name(f)
            ));
            match &f.body {
                FuncBody::External => code.line("// Supplied by the application."),
                FuncBody::Statements(stmts) => {
                    for s in stmts {
                        code.line(&self.low.stmt(s)?);
                    }
                }
            }
            code.close();
        }
        Ok(())
    }

    fn nested_head(&self, name: &str) -> String {
        if self.lang.java() {
            format!("public static class {name} {{")
        } else {
            format!("public class {name} {{")
        }
    }

    fn coll_field(&self, code: &mut Code, name: &str) {
        code.line(&format!(
            "public {ro} {u} {name} = new {u}();",
            ro = self.lang.readonly(),
            u = self.lang.unordered
        ));
    }

    fn inner_classes(&self, code: &mut Code) {
        let lang = self.lang;
        let scheme = &self.a.ssa.condition_scheme;

        code.line("");
        code.open(&self.nested_head("ConditionScheme"));
        self.coll_field(code, "guards");
        self.coll_field(code, "funcActions");
        code.line("");
        code.open("public ConditionScheme() {");
        for c in &scheme.conditions {
            code.line(&lang.put(
                "guards",
                &quote(&c.id),
                &format!(
                    "new Guard({}, new OclExpression({}))",
                    quote(&c.id),
                    quote(&crate::expr::pretty(&c.expr))
                ),
            ));
        }
        for f in &scheme.func_actions {
            code.line(&lang.put(
                "funcActions",
                &quote(&f.id),
                &format!(
                    "new FuncAction({}, {}, {})",
                    quote(&f.id),
                    quote(&super::function_method_name(f)),
                    matches!(f.body, FuncBody::External)
                ),
            ));
        }
        code.close();
        code.close();

        code.line("");
        code.open(&self.nested_head("Memory"));
        self.coll_field(code, "variables");
        code.line("");
        code.open("public Memory() {");
        for v in &self.a.variables {
            code.line(&lang.put(
                "variables",
                &quote(&v.name),
                &format!(
                    "new Variable({}, {})",
                    quote(&v.name),
                    quote(&v.platform_type)
                ),
            ));
        }
        code.close();
        code.close();

        code.line("");
        code.open(&self.nested_head("IOSystem"));
        self.coll_field(code, "ioActions");
        code.line("");
        code.open("public IOSystem() {");
        for io in &self.a.io_actions {
            let kind = match (io.mode, io.direction) {
                (IoMode::Stream, IoDirection::Input) => "StreamInput",
                (IoMode::Stream, IoDirection::Output) => "StreamOutput",
                (IoMode::Gui, IoDirection::Input) => "GuiInput",
                (IoMode::Gui, IoDirection::Output) => "GuiOutput",
            };
            code.line(&lang.put(
                "ioActions",
                &quote(&io.id),
                &format!(
                    "new {kind}({}, {}, {})",
                    quote(&io.id),
                    quote(&io.destination),
                    null_or(io.control.as_deref())
                ),
            ));
        }
        code.close();
        code.close();
    }
}

pub(crate) fn phsa_class(
    lang: &Lang,
    psm: &PsmDocument,
    index: usize,
) -> Result<String, CodegenError> {
    let a = &psm.automata[index];
    let e = Emitter {
        lang,
        psm,
        a,
        low: Lowering {
            syntax: lang.syntax,
            automaton: a,
            ordered: &lang.ordered,
            unordered: &lang.unordered,
        },
    };
    let mut code = Code::new();
    lang.header(&mut code);
    let base = if lang.java() {
        "extends ClassPHSA"
    } else {
        ": ClassPHSA"
    };
    code.open(&format!("public class Phsa{} {base} {{", a.ssa.id));
    e.fields(&mut code)?;
    code.line("");
    e.constructor(&mut code)?;
    code.line("");
    e.handler(&mut code)?;
    code.line("");
    e.enabled(&mut code)?;
    e.entry_methods(&mut code)?;
    e.function_methods(&mut code)?;
    e.inner_classes(&mut code);
    code.close();
    Ok(code.finish())
}
