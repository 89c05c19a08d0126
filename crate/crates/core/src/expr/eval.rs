use std::collections::BTreeMap;

use super::ast::*;
use super::value::Value;
use super::EvalError;

/// Read-only view of variable values.
pub trait ValueScope {
    fn value_of(&self, name: &str) -> Option<&Value>;
}

impl ValueScope for BTreeMap<String, Value> {
    fn value_of(&self, name: &str) -> Option<&Value> {
        self.get(name)
    }
}

fn mismatch(expected: &str, found: &Value) -> EvalError {
    EvalError::TypeMismatch {
        expected: expected.into(),
        found: found.generic_type(),
    }
}

fn as_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Integer(i) => Some(*i as f64),
        Value::Real(r) => Some(*r),
        _ => None,
    }
}

fn arith(op: BinaryOp, l: Value, r: Value) -> Result<Value, EvalError> {
    match (&l, &r) {
        (Value::Integer(a), Value::Integer(b)) => {
            let (a, b) = (*a, *b);
            let res = match op {
                BinaryOp::Add => a.checked_add(b),
                BinaryOp::Sub => a.checked_sub(b),
                BinaryOp::Mul => a.checked_mul(b),
                BinaryOp::Div => {
                    if b == 0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    a.checked_div(b)
                }
                _ => unreachable!("not an arithmetic operator"),
            };
            res.map(Value::Integer).ok_or(EvalError::Overflow)
        }
        (Value::String(a), Value::String(b)) if op == BinaryOp::Add => {
            Ok(Value::String(format!("{a}{b}")))
        }
        _ => {
            let a = as_f64(&l).ok_or_else(|| mismatch("integer or real", &l))?;
            let b = as_f64(&r).ok_or_else(|| mismatch("integer or real", &r))?;
            let res = match op {
                BinaryOp::Add => a + b,
                BinaryOp::Sub => a - b,
                BinaryOp::Mul => a * b,
                BinaryOp::Div => {
                    if b == 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    a / b
                }
                _ => unreachable!("not an arithmetic operator"),
            };
            if res.is_finite() {
                Ok(Value::Real(res))
            } else {
                Err(EvalError::Overflow)
            }
        }
    }
}

fn compare(op: BinaryOp, l: &Value, r: &Value) -> Result<bool, EvalError> {
    use std::cmp::Ordering;
    let ord = match (l, r) {
        (Value::Integer(a), Value::Integer(b)) => a.cmp(b),
        (Value::Char(a), Value::Char(b)) => a.cmp(b),
        (Value::String(a), Value::String(b)) => a.cmp(b),
        _ => {
            let a = as_f64(l).ok_or_else(|| mismatch("integer, real, char or string", l))?;
            let b = as_f64(r).ok_or_else(|| mismatch(l.generic_type().as_str(), r))?;
            a.partial_cmp(&b).unwrap_or(Ordering::Equal)
        }
    };
    Ok(match op {
        BinaryOp::Lt => ord == Ordering::Less,
        BinaryOp::Le => ord != Ordering::Greater,
        BinaryOp::Gt => ord == Ordering::Greater,
        BinaryOp::Ge => ord != Ordering::Less,
        _ => unreachable!("not an ordering operator"),
    })
}

fn flag(v: Value) -> Result<bool, EvalError> {
    v.as_flag().ok_or_else(|| mismatch("flag", &v))
}

/// Evaluates `e` against an immutable memory snapshot.
pub fn eval_expr<M: ValueScope + ?Sized>(e: &Expr, mem: &M) -> Result<Value, EvalError> {
    match e {
        Expr::Lit(lit) => Ok(Value::from_literal(lit)),
        Expr::Var(v) => mem
            .value_of(v)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
        Expr::Unary(UnaryOp::Not, x) => Ok(Value::Flag(!flag(eval_expr(x, mem)?)?)),
        Expr::Unary(UnaryOp::Neg, x) => match eval_expr(x, mem)? {
            Value::Integer(i) => i
                .checked_neg()
                .map(Value::Integer)
                .ok_or(EvalError::Overflow),
            Value::Real(r) => Ok(Value::Real(-r)),
            other => Err(mismatch("integer or real", &other)),
        },
        Expr::Binary(BinaryOp::And, l, r) => {
            // Both sides are evaluated; guards carry no side effects.
            let a = flag(eval_expr(l, mem)?)?;
            let b = flag(eval_expr(r, mem)?)?;
            Ok(Value::Flag(a && b))
        }
        Expr::Binary(BinaryOp::Or, l, r) => {
            let a = flag(eval_expr(l, mem)?)?;
            let b = flag(eval_expr(r, mem)?)?;
            Ok(Value::Flag(a || b))
        }
        Expr::Binary(op, l, r) => {
            let lv = eval_expr(l, mem)?;
            let rv = eval_expr(r, mem)?;
            match op {
                BinaryOp::Eq => Ok(Value::Flag(lv.equals(&rv))),
                BinaryOp::Ne => Ok(Value::Flag(!lv.equals(&rv))),
                BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => {
                    compare(*op, &lv, &rv).map(Value::Flag)
                }
                _ => arith(*op, lv, rv),
            }
        }
        Expr::Collection(kind, items) => {
            let vals = items
                .iter()
                .map(|i| eval_expr(i, mem))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match kind {
                CollectionKind::Sequence => Value::OrdCollect(vals),
                CollectionKind::Set => Value::UnordCollect(vals),
            })
        }
        Expr::Size(x) => match eval_expr(x, mem)? {
            Value::OrdCollect(v) | Value::UnordCollect(v) => Ok(Value::Integer(v.len() as i64)),
            Value::String(s) => Ok(Value::Integer(s.chars().count() as i64)),
            other => Err(mismatch("collection or string", &other)),
        },
    }
}
