//! Lowering of guard and action expressions to target syntax.

use crate::expr::{
    pretty, typecheck, write_literal, BinaryOp, CollectionKind, Expr, GenericType, Stmt, UnaryOp,
};
use crate::ir::ActionRef;
use crate::psm::{PsmAutomaton, PsmIoAction, TargetSyntax, SUBJECT};

use super::CodegenError;

/// What lowering needs to know about the surrounding automaton.
pub(crate) struct Lowering<'a> {
    pub syntax: TargetSyntax,
    pub automaton: &'a PsmAutomaton,
    pub ordered: &'a str,
    pub unordered: &'a str,
}

fn java_op(op: BinaryOp) -> &'static str {
    match op {
        BinaryOp::Eq => "==",
        BinaryOp::Ne => "!=",
        BinaryOp::And => "&&",
        BinaryOp::Or => "||",
        other => other.symbol(),
    }
}

impl Lowering<'_> {
    fn ty(&self, e: &Expr) -> Option<GenericType> {
        typecheck(e, self.automaton).ok()
    }

    /// Operand position: composite subexpressions are parenthesized.
    fn operand(&self, e: &Expr) -> Result<String, CodegenError> {
        let s = self.expr(e)?;
        Ok(match e {
            Expr::Binary(..) => format!("({s})"),
            _ => s,
        })
    }

    pub fn expr(&self, e: &Expr) -> Result<String, CodegenError> {
        Ok(match e {
            Expr::Lit(lit) => {
                let mut s = String::new();
                write_literal(&mut s, lit);
                s
            }
            Expr::Var(v) => v.clone(),
            Expr::Unary(UnaryOp::Not, x) => format!("!{}", self.operand(x)?),
            Expr::Unary(UnaryOp::Neg, x) => format!("-{}", self.operand(x)?),
            Expr::Binary(op, l, r) => {
                let strings = self.ty(l) == Some(GenericType::String)
                    && self.ty(r) == Some(GenericType::String);
                let (a, b) = (self.operand(l)?, self.operand(r)?);
                match (op, self.syntax, strings) {
                    (BinaryOp::Eq, TargetSyntax::JavaLike, true) => format!("{a}.equals({b})"),
                    (BinaryOp::Ne, TargetSyntax::JavaLike, true) => format!("!{a}.equals({b})"),
                    (op, _, _) if op.is_comparison() => format!("{a}{}{b}", java_op(*op)),
                    (op, _, _) => format!("{a} {} {b}", java_op(*op)),
                }
            }
            Expr::Collection(CollectionKind::Sequence, items) => {
                let items = items
                    .iter()
                    .map(|i| self.expr(i))
                    .collect::<Result<Vec<_>, _>>()?;
                format!("ordered({})", items.join(", "))
            }
            Expr::Collection(CollectionKind::Set, items) if items.is_empty() => {
                format!("new {}()", self.unordered)
            }
            Expr::Collection(CollectionKind::Set, _) => {
                return Err(CodegenError::UnsupportedExpression {
                    automaton: self.automaton.ssa.id.clone(),
                    expr: pretty(e),
                    reason: "unordered collection literals with elements have no key".into(),
                })
            }
            Expr::Size(x) => {
                let base = self.operand(x)?;
                let prop = match (self.syntax, self.ty(x)) {
                    (TargetSyntax::JavaLike, Some(GenericType::String)) => "length()",
                    (TargetSyntax::JavaLike, _) => "size()",
                    (TargetSyntax::CSharpLike, Some(GenericType::String)) => "Length",
                    (TargetSyntax::CSharpLike, Some(GenericType::OrdCollect))
                        if self.ordered == "Array" =>
                    {
                        "Length"
                    }
                    (TargetSyntax::CSharpLike, _) => "Count",
                };
                format!("{base}.{prop}")
            }
        })
    }

    /// A guard joined to an event test with `&&`.
    pub fn guard_operand(&self, e: &Expr) -> Result<String, CodegenError> {
        let s = self.expr(e)?;
        Ok(match e {
            Expr::Binary(BinaryOp::And | BinaryOp::Or, ..) => format!("({s})"),
            _ => s,
        })
    }

    fn io(&self, id: &str) -> Result<&PsmIoAction, CodegenError> {
        self.automaton
            .io_actions
            .iter()
            .find(|a| a.id == id)
            .ok_or_else(|| self.unknown(format!("io action `{id}`")))
    }

    fn unknown(&self, what: String) -> CodegenError {
        CodegenError::UnknownReference {
            automaton: self.automaton.ssa.id.clone(),
            what,
        }
    }

    pub fn function_method(&self, key: &str) -> Result<String, CodegenError> {
        let f = self
            .automaton
            .ssa
            .func_action(key)
            .ok_or_else(|| self.unknown(format!("function action `{key}`")))?;
        Ok(super::function_method_name(f))
    }

    pub fn stmt(&self, s: &Stmt) -> Result<String, CodegenError> {
        Ok(match s {
            Stmt::Assign { target, value } => format!("{target} = {};", self.expr(value)?),
            Stmt::Call(key) => format!("{}();", self.function_method(key)?),
            Stmt::Send { event, target } => send(event, target.as_deref()),
            Stmt::Io(id) => {
                let io = self.io(id)?;
                io.statement.replace(SUBJECT, &self.expr(&io.subject)?)
            }
        })
    }

    pub fn action(&self, a: &ActionRef) -> Result<String, CodegenError> {
        Ok(match a {
            ActionRef::Inline(s) => self.stmt(s)?,
            ActionRef::Function(id) => format!("{}();", self.function_method(id)?),
            ActionRef::SendEvent { event, target } => send(event, target.as_deref()),
            ActionRef::Activate { child, .. } => format!("activate({});", quote(child)),
        })
    }
}

fn send(event: &str, target: Option<&str>) -> String {
    match target {
        Some(t) => format!("send({}, {});", quote(event), quote(t)),
        None => format!("send({});", quote(event)),
    }
}

/// String literal in either target language.
pub(crate) fn quote(s: &str) -> String {
    let mut out = String::new();
    write_literal(&mut out, &crate::expr::Literal::Str(s.to_string()));
    out
}
