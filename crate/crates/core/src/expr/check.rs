use std::collections::BTreeMap;

use super::ast::*;
use super::TypeError;

/// Static variable environment for type checking.
pub trait TypeScope {
    fn type_of(&self, name: &str) -> Option<GenericType>;
}

impl TypeScope for BTreeMap<String, GenericType> {
    fn type_of(&self, name: &str) -> Option<GenericType> {
        self.get(name).copied()
    }
}

impl TypeScope for [(&str, GenericType)] {
    fn type_of(&self, name: &str) -> Option<GenericType> {
        self.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
    }
}

fn expect(expected: GenericType, found: GenericType) -> Result<(), TypeError> {
    if expected == found {
        Ok(())
    } else {
        Err(TypeError::Mismatch {
            expected: expected.as_str().into(),
            found,
        })
    }
}

fn numeric(found: GenericType) -> Result<(), TypeError> {
    if found.is_numeric() {
        Ok(())
    } else {
        Err(TypeError::Mismatch {
            expected: "integer or real".into(),
            found,
        })
    }
}

fn compatible(a: GenericType, b: GenericType) -> bool {
    a == b || (a.is_numeric() && b.is_numeric())
}

/// Infers the generic type of `e` against `scope`.
pub fn typecheck<S: TypeScope + ?Sized>(e: &Expr, scope: &S) -> Result<GenericType, TypeError> {
    match e {
        Expr::Lit(Literal::Integer(_)) => Ok(GenericType::Integer),
        Expr::Lit(Literal::Real(_)) => Ok(GenericType::Real),
        Expr::Lit(Literal::Flag(_)) => Ok(GenericType::Flag),
        Expr::Lit(Literal::Char(_)) => Ok(GenericType::Char),
        Expr::Lit(Literal::Str(_)) => Ok(GenericType::String),
        Expr::Var(v) => scope
            .type_of(v)
            .ok_or_else(|| TypeError::UnboundVariable(v.clone())),
        Expr::Unary(UnaryOp::Not, x) => {
            expect(GenericType::Flag, typecheck(x, scope)?)?;
            Ok(GenericType::Flag)
        }
        Expr::Unary(UnaryOp::Neg, x) => {
            let t = typecheck(x, scope)?;
            numeric(t)?;
            Ok(t)
        }
        Expr::Binary(op, l, r) => {
            let lt = typecheck(l, scope)?;
            let rt = typecheck(r, scope)?;
            match op {
                BinaryOp::And | BinaryOp::Or => {
                    expect(GenericType::Flag, lt)?;
                    expect(GenericType::Flag, rt)?;
                    Ok(GenericType::Flag)
                }
                BinaryOp::Eq | BinaryOp::Ne => {
                    if compatible(lt, rt) {
                        Ok(GenericType::Flag)
                    } else {
                        Err(TypeError::Mismatch {
                            expected: lt.as_str().into(),
                            found: rt,
                        })
                    }
                }
                BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => {
                    let ordered = |t: GenericType| {
                        t.is_numeric() || t == GenericType::Char || t == GenericType::String
                    };
                    if !ordered(lt) {
                        return Err(TypeError::Mismatch {
                            expected: "integer, real, char or string".into(),
                            found: lt,
                        });
                    }
                    if !compatible(lt, rt) {
                        return Err(TypeError::Mismatch {
                            expected: lt.as_str().into(),
                            found: rt,
                        });
                    }
                    Ok(GenericType::Flag)
                }
                BinaryOp::Add if lt == GenericType::String => {
                    expect(GenericType::String, rt)?;
                    Ok(GenericType::String)
                }
                BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div => {
                    numeric(lt)?;
                    numeric(rt)?;
                    if lt == GenericType::Real || rt == GenericType::Real {
                        Ok(GenericType::Real)
                    } else {
                        Ok(GenericType::Integer)
                    }
                }
            }
        }
        Expr::Collection(kind, items) => {
            let mut first: Option<GenericType> = None;
            for item in items {
                let t = typecheck(item, scope)?;
                match first {
                    None => first = Some(t),
                    Some(f) if compatible(f, t) => {}
                    Some(f) => {
                        return Err(TypeError::Mismatch {
                            expected: f.as_str().into(),
                            found: t,
                        })
                    }
                }
            }
            Ok(kind.generic_type())
        }
        Expr::Size(x) => {
            let t = typecheck(x, scope)?;
            if t.is_collection() || t == GenericType::String {
                Ok(GenericType::Integer)
            } else {
                Err(TypeError::Mismatch {
                    expected: "collection or string".into(),
                    found: t,
                })
            }
        }
    }
}

/// Type-checks a guard, which must be a flag expression.
pub fn typecheck_guard<S: TypeScope + ?Sized>(e: &Expr, scope: &S) -> Result<(), TypeError> {
    expect(GenericType::Flag, typecheck(e, scope)?)
}

/// Checks that a value of type `found` may be stored in a variable of type `declared`.
pub fn assignable(declared: GenericType, found: GenericType) -> Result<(), TypeError> {
    if declared == found || (declared == GenericType::Real && found == GenericType::Integer) {
        Ok(())
    } else {
        Err(TypeError::Mismatch {
            expected: declared.as_str().into(),
            found,
        })
    }
}
