//! The guard and action language: a small subset of OCL expressions.
//!
//! The grammar is documented in `docs/expr-grammar.md`. Expressions are
//! side-effect free; statements ([`Stmt`]) only appear in action bodies.

mod ast;
mod check;
mod eval;
mod lexer;
mod parser;
mod pretty;
mod value;

use thiserror::Error;

pub use ast::{BinaryOp, CollectionKind, Expr, GenericType, Literal, Stmt, UnaryOp};
pub use check::{assignable, typecheck, typecheck_guard, TypeScope};
pub use eval::{eval_expr, ValueScope};
pub(crate) use pretty::write_literal;
pub use pretty::{pretty, pretty_stmt, pretty_stmts};
pub use value::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{column}: found {found}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(", expected {}", expected.join(" or "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("type mismatch: expected {expected}, found {found}")]
    Mismatch {
        expected: String,
        found: GenericType,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch {
        expected: String,
        found: GenericType,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("integer overflow")]
    Overflow,
}

impl EvalError {
    pub fn code(&self) -> &'static str {
        match self {
            EvalError::UnboundVariable(_) => "unbound-variable",
            EvalError::TypeMismatch { .. } => "type-mismatch",
            EvalError::DivisionByZero => "division-by-zero",
            EvalError::Overflow => "overflow",
        }
    }
}

/// Parses a single expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = parser::Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a `;`-separated statement list. Both `x := e` and `x = e` are
/// read as assignment at statement level.
pub fn parse_stmts(text: &str) -> Result<Vec<Stmt>, ParseError> {
    parser::Parser::new(text)?.stmts()
}

/// Parses exactly one statement.
pub fn parse_stmt(text: &str) -> Result<Stmt, ParseError> {
    let mut p = parser::Parser::new(text)?;
    let s = p.stmt()?;
    p.finish()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn mem(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn parses_atm_conditions() {
        assert_eq!(
            parse_expr("PIN_code_OK = true").unwrap(),
            Expr::binary(BinaryOp::Eq, Expr::var("PIN_code_OK"), Expr::flag(true))
        );
        assert_eq!(
            parse_expr("errors = 3").unwrap(),
            Expr::binary(BinaryOp::Eq, Expr::var("errors"), Expr::int(3))
        );
        assert_eq!(parse_expr("true").unwrap(), Expr::flag(true));
        let third = parse_expr("PIN_code_OK = false and errors < 3").unwrap();
        assert_eq!(
            third,
            Expr::binary(
                BinaryOp::And,
                Expr::binary(BinaryOp::Eq, Expr::var("PIN_code_OK"), Expr::flag(false)),
                Expr::binary(BinaryOp::Lt, Expr::var("errors"), Expr::int(3)),
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(pretty(&parse_expr("1 + 2 * 3").unwrap()), "1 + 2 * 3");
        assert_eq!(pretty(&parse_expr("(1 + 2) * 3").unwrap()), "(1 + 2) * 3");
        assert_eq!(pretty(&parse_expr("1 - (2 - 3)").unwrap()), "1 - (2 - 3)");
        assert_eq!(pretty(&parse_expr("1 - 2 - 3").unwrap()), "1 - 2 - 3");
        assert_eq!(
            pretty(&parse_expr("not (a or b) and c").unwrap()),
            "not (a or b) and c"
        );
        assert_eq!(
            pretty(&parse_expr("Sequence{1,2}->size()").unwrap()),
            "Sequence{1, 2}->size()"
        );
        assert_eq!(pretty(&parse_expr("-(x)->size()").unwrap()), "-x->size()");
    }

    #[test]
    fn syntax_errors_carry_position_and_expectation() {
        let err = parse_expr("errors = ").unwrap_err();
        assert_eq!((err.line, err.column), (1, 10));
        assert!(err.expected.iter().any(|e| e == "literal"));

        let err = parse_expr("a =\n  (b").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.expected, vec!["`)`".to_string()]);

        // Constructs outside the subset are rejected.
        assert!(parse_expr("xs->forAll(x | x > 0)").is_err());
        assert!(parse_expr("a.b").is_err());
        assert!(parse_expr("99999999999999999999").is_err());
    }

    #[test]
    fn evaluates_atm_condition() {
        let e = parse_expr("PIN_code_OK = false and errors < 3").unwrap();
        let m = mem(&[
            ("PIN_code_OK", Value::Flag(false)),
            ("errors", Value::Integer(1)),
        ]);
        assert_eq!(eval_expr(&e, &m).unwrap(), Value::Flag(true));

        let e = parse_expr("errors = 3").unwrap();
        let m = mem(&[("errors", Value::Integer(0))]);
        assert_eq!(eval_expr(&e, &m).unwrap(), Value::Flag(false));
    }

    #[test]
    fn evaluation_errors() {
        let empty = BTreeMap::new();
        assert_eq!(
            eval_expr(&parse_expr("1/0").unwrap(), &empty),
            Err(EvalError::DivisionByZero)
        );
        assert_eq!(
            eval_expr(&parse_expr("1.5/0").unwrap(), &empty),
            Err(EvalError::DivisionByZero)
        );
        assert_eq!(
            eval_expr(&parse_expr("x + 1").unwrap(), &empty),
            Err(EvalError::UnboundVariable("x".into()))
        );
        assert_eq!(
            eval_expr(&parse_expr("9223372036854775807 + 1").unwrap(), &empty),
            Err(EvalError::Overflow)
        );
    }

    #[test]
    fn arithmetic_promotion() {
        let empty = BTreeMap::new();
        assert_eq!(
            eval_expr(&parse_expr("7 / 2").unwrap(), &empty).unwrap(),
            Value::Integer(3)
        );
        assert_eq!(
            eval_expr(&parse_expr("7 / 2.0").unwrap(), &empty).unwrap(),
            Value::Real(3.5)
        );
        assert_eq!(
            eval_expr(&parse_expr("1 = 1.0").unwrap(), &empty).unwrap(),
            Value::Flag(true)
        );
        assert_eq!(
            eval_expr(&parse_expr("Set{1, 2} = Set{2, 1}").unwrap(), &empty).unwrap(),
            Value::Flag(true)
        );
        assert_eq!(
            eval_expr(
                &parse_expr("Sequence{1, 2} = Sequence{2, 1}").unwrap(),
                &empty
            )
            .unwrap(),
            Value::Flag(false)
        );
        assert_eq!(
            eval_expr(&parse_expr("\"ab\" + \"c\"").unwrap(), &empty).unwrap(),
            Value::String("abc".into())
        );
    }

    #[test]
    fn typechecking() {
        let scope: &[(&str, GenericType)] = &[
            ("errors", GenericType::Integer),
            ("PIN_code_OK", GenericType::Flag),
        ];
        assert_eq!(
            typecheck(&parse_expr("errors + 1").unwrap(), scope),
            Ok(GenericType::Integer)
        );
        assert_eq!(
            typecheck(&parse_expr("PIN_code_OK = true").unwrap(), scope),
            Ok(GenericType::Flag)
        );
        let err = typecheck(&parse_expr("errors and true").unwrap(), scope).unwrap_err();
        assert_eq!(
            err,
            TypeError::Mismatch {
                expected: "flag".into(),
                found: GenericType::Integer
            }
        );
        let msg = err.to_string();
        assert!(msg.contains("flag") && msg.contains("integer"), "{msg}");
        assert!(typecheck_guard(&parse_expr("errors + 1").unwrap(), scope).is_err());
        assert_eq!(
            typecheck(&parse_expr("missing").unwrap(), scope),
            Err(TypeError::UnboundVariable("missing".into()))
        );
    }

    #[test]
    fn statements() {
        assert_eq!(
            parse_stmts("v1 = v1 + 1; v2 := true").unwrap(),
            vec![
                Stmt::Assign {
                    target: "v1".into(),
                    value: Expr::binary(BinaryOp::Add, Expr::var("v1"), Expr::int(1)),
                },
                Stmt::Assign {
                    target: "v2".into(),
                    value: Expr::flag(true),
                },
            ]
        );
        assert_eq!(
            parse_stmt("send(ev1)").unwrap(),
            Stmt::Send {
                event: "ev1".into(),
                target: None
            }
        );
        assert_eq!(
            parse_stmt("send ev1").unwrap(),
            parse_stmt("send(ev1)").unwrap()
        );
        assert_eq!(
            parse_stmt("verifyPINCode()").unwrap(),
            Stmt::Call("verifyPINCode".into())
        );
        assert_eq!(parse_stmt("io(show)").unwrap(), Stmt::Io("show".into()));
        for s in ["x := 1 + 2", "f()", "send(ev2, A3)", "io(readPin)"] {
            assert_eq!(pretty_stmt(&parse_stmt(s).unwrap()), s);
        }
        assert!(parse_stmts("").unwrap().is_empty());
        assert!(parse_stmts("x := 1 y := 2").is_err());
    }

    #[test]
    fn literals_round_trip() {
        for src in [
            "'a'",
            "'\\''",
            "\"quo\\\"te\\n\"",
            "1.5",
            "1e20",
            "0.1",
            "Set{}",
        ] {
            let e = parse_expr(src).unwrap();
            assert_eq!(parse_expr(&pretty(&e)).unwrap(), e, "{src}");
        }
    }
}
