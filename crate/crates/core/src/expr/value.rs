use std::fmt;

use serde::{Deserialize, Serialize};

use super::ast::{GenericType, Literal};
use super::pretty::write_literal;

/// Runtime value held in automaton memory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Value {
    Integer(i64),
    Real(f64),
    Flag(bool),
    Char(char),
    String(String),
    OrdCollect(Vec<Value>),
    UnordCollect(Vec<Value>),
}

impl Value {
    pub fn generic_type(&self) -> GenericType {
        match self {
            Value::Integer(_) => GenericType::Integer,
            Value::Real(_) => GenericType::Real,
            Value::Flag(_) => GenericType::Flag,
            Value::Char(_) => GenericType::Char,
            Value::String(_) => GenericType::String,
            Value::OrdCollect(_) => GenericType::OrdCollect,
            Value::UnordCollect(_) => GenericType::UnordCollect,
        }
    }

    /// Value of a declared variable without initializer.
    pub fn default_for(ty: GenericType) -> Value {
        match ty {
            GenericType::Integer => Value::Integer(0),
            GenericType::Real => Value::Real(0.0),
            GenericType::Flag => Value::Flag(false),
            GenericType::Char => Value::Char(' '),
            GenericType::String => Value::String(String::new()),
            GenericType::OrdCollect => Value::OrdCollect(Vec::new()),
            GenericType::UnordCollect => Value::UnordCollect(Vec::new()),
        }
    }

    pub fn as_flag(&self) -> Option<bool> {
        match self {
            Value::Flag(b) => Some(*b),
            _ => None,
        }
    }

    pub(crate) fn from_literal(lit: &Literal) -> Value {
        match lit {
            Literal::Integer(v) => Value::Integer(*v),
            Literal::Real(v) => Value::Real(*v),
            Literal::Flag(v) => Value::Flag(*v),
            Literal::Char(v) => Value::Char(*v),
            Literal::Str(v) => Value::String(v.clone()),
        }
    }

    /// Structural equality with integer/real promotion and multiset
    /// semantics for unordered collections.
    pub fn equals(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Integer(a), Value::Real(b)) | (Value::Real(b), Value::Integer(a)) => {
                (*a as f64) == *b
            }
            (Value::OrdCollect(a), Value::OrdCollect(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equals(y))
            }
            (Value::UnordCollect(a), Value::UnordCollect(b)) => {
                if a.len() != b.len() {
                    return false;
                }
                let mut used = vec![false; b.len()];
                a.iter().all(|x| {
                    match b
                        .iter()
                        .enumerate()
                        .position(|(i, y)| !used[i] && x.equals(y))
                    {
                        Some(i) => {
                            used[i] = true;
                            true
                        }
                        None => false,
                    }
                })
            }
            _ => self == other,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        match self {
            Value::Integer(v) => write_literal(&mut s, &Literal::Integer(*v)),
            Value::Real(v) => write_literal(&mut s, &Literal::Real(*v)),
            Value::Flag(v) => write_literal(&mut s, &Literal::Flag(*v)),
            Value::Char(v) => write_literal(&mut s, &Literal::Char(*v)),
            Value::String(v) => write_literal(&mut s, &Literal::Str(v.clone())),
            Value::OrdCollect(items) | Value::UnordCollect(items) => {
                s.push_str(if matches!(self, Value::OrdCollect(_)) {
                    "Sequence{"
                } else {
                    "Set{"
                });
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        s.push_str(", ");
                    }
                    s.push_str(&item.to_string());
                }
                s.push('}');
            }
        }
        f.write_str(&s)
    }
}
