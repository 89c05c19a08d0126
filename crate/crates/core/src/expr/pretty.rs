use std::fmt::Write;

use super::ast::*;

const UNARY_PREC: u8 = 6;
const POSTFIX_PREC: u8 = 7;
const ATOM_PREC: u8 = 8;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Binary(op, ..) => op.precedence(),
        Expr::Unary(..) => UNARY_PREC,
        Expr::Size(_) => POSTFIX_PREC,
        Expr::Lit(Literal::Integer(v)) if *v < 0 => UNARY_PREC,
        Expr::Lit(Literal::Real(v)) if v.is_sign_negative() => UNARY_PREC,
        _ => ATOM_PREC,
    }
}

pub(crate) fn write_literal(out: &mut String, lit: &Literal) {
    match lit {
        Literal::Integer(v) => {
            let _ = write!(out, "{v}");
        }
        Literal::Real(v) => {
            let _ = write!(out, "{v:?}");
        }
        Literal::Flag(b) => out.push_str(if *b { "true" } else { "false" }),
        Literal::Char(c) => {
            out.push('\'');
            push_escaped(out, *c, '\'');
            out.push('\'');
        }
        Literal::Str(s) => {
            out.push('"');
            for c in s.chars() {
                push_escaped(out, c, '"');
            }
            out.push('"');
        }
    }
}

fn push_escaped(out: &mut String, c: char, quote: char) {
    match c {
        '\n' => out.push_str("\\n"),
        '\t' => out.push_str("\\t"),
        '\\' => out.push_str("\\\\"),
        c if c == quote => {
            out.push('\\');
            out.push(c);
        }
        c => out.push(c),
    }
}

fn write_child(out: &mut String, e: &Expr, min_prec: u8) {
    if prec(e) < min_prec {
        out.push('(');
        write_expr(out, e);
        out.push(')');
    } else {
        write_expr(out, e);
    }
}

fn write_expr(out: &mut String, e: &Expr) {
    match e {
        Expr::Lit(lit) => write_literal(out, lit),
        Expr::Var(v) => out.push_str(v),
        Expr::Unary(UnaryOp::Not, x) => {
            out.push_str("not ");
            write_child(out, x, UNARY_PREC);
        }
        Expr::Unary(UnaryOp::Neg, x) => {
            out.push('-');
            write_child(out, x, UNARY_PREC);
        }
        Expr::Binary(op, l, r) => {
            let p = op.precedence();
            write_child(out, l, p);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_child(out, r, p + 1);
        }
        Expr::Collection(kind, items) => {
            out.push_str(kind.keyword());
            out.push('{');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(out, item);
            }
            out.push('}');
        }
        Expr::Size(x) => {
            write_child(out, x, POSTFIX_PREC);
            out.push_str("->size()");
        }
    }
}

/// Canonical source text of an expression. Parsing the output yields the
/// same tree for every tree produced by the parser.
pub fn pretty(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e);
    out
}

pub fn pretty_stmt(s: &Stmt) -> String {
    match s {
        Stmt::Assign { target, value } => format!("{target} := {}", pretty(value)),
        Stmt::Call(f) => format!("{f}()"),
        Stmt::Send {
            event,
            target: None,
        } => format!("send({event})"),
        Stmt::Send {
            event,
            target: Some(t),
        } => format!("send({event}, {t})"),
        Stmt::Io(id) => format!("io({id})"),
    }
}

pub fn pretty_stmts(stmts: &[Stmt]) -> String {
    stmts.iter().map(pretty_stmt).collect::<Vec<_>>().join("; ")
}
