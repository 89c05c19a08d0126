use std::fmt;

use serde::{Deserialize, Serialize};

/// Generic data types of the automaton memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenericType {
    Integer,
    Real,
    Flag,
    Char,
    String,
    OrdCollect,
    UnordCollect,
}

impl GenericType {
    pub const ALL: [GenericType; 7] = [
        GenericType::Integer,
        GenericType::Real,
        GenericType::Flag,
        GenericType::Char,
        GenericType::String,
        GenericType::OrdCollect,
        GenericType::UnordCollect,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GenericType::Integer => "integer",
            GenericType::Real => "real",
            GenericType::Flag => "flag",
            GenericType::Char => "char",
            GenericType::String => "string",
            GenericType::OrdCollect => "ord_collect",
            GenericType::UnordCollect => "unord_collect",
        }
    }

    pub fn parse(s: &str) -> Option<GenericType> {
        GenericType::ALL.into_iter().find(|t| t.as_str() == s)
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, GenericType::Integer | GenericType::Real)
    }

    pub fn is_collection(self) -> bool {
        matches!(self, GenericType::OrdCollect | GenericType::UnordCollect)
    }
}

impl fmt::Display for GenericType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Literal {
    Integer(i64),
    Real(f64),
    Flag(bool),
    Char(char),
    Str(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnaryOp {
    Not,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Eq => "=",
            BinaryOp::Ne => "<>",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::And => "and",
            BinaryOp::Or => "or",
        }
    }

    /// Binding strength in the source grammar; higher binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Or => 1,
            BinaryOp::And => 2,
            BinaryOp::Eq
            | BinaryOp::Ne
            | BinaryOp::Lt
            | BinaryOp::Le
            | BinaryOp::Gt
            | BinaryOp::Ge => 3,
            BinaryOp::Add | BinaryOp::Sub => 4,
            BinaryOp::Mul | BinaryOp::Div => 5,
        }
    }

    pub fn is_comparison(self) -> bool {
        self.precedence() == 3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CollectionKind {
    /// `Sequence{...}`, an `ord_collect` value.
    Sequence,
    /// `Set{...}`, an `unord_collect` value.
    Set,
}

impl CollectionKind {
    pub fn keyword(self) -> &'static str {
        match self {
            CollectionKind::Sequence => "Sequence",
            CollectionKind::Set => "Set",
        }
    }

    pub fn generic_type(self) -> GenericType {
        match self {
            CollectionKind::Sequence => GenericType::OrdCollect,
            CollectionKind::Set => GenericType::UnordCollect,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Expr {
    Lit(Literal),
    Var(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Collection(CollectionKind, Vec<Expr>),
    Size(Box<Expr>),
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Lit(Literal::Integer(v))
    }

    pub fn flag(v: bool) -> Expr {
        Expr::Lit(Literal::Flag(v))
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn unary(op: UnaryOp, operand: Expr) -> Expr {
        Expr::Unary(op, Box::new(operand))
    }

    /// Names of all variables referenced, in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        fn walk<'a>(e: &'a Expr, out: &mut Vec<&'a str>) {
            match e {
                Expr::Lit(_) => {}
                Expr::Var(v) => {
                    if !out.contains(&v.as_str()) {
                        out.push(v);
                    }
                }
                Expr::Unary(_, x) | Expr::Size(x) => walk(x, out),
                Expr::Binary(_, l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                Expr::Collection(_, items) => items.iter().for_each(|i| walk(i, out)),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

/// A statement of an action body.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Stmt {
    Assign {
        target: String,
        value: Expr,
    },
    /// Invocation of another function action, by id or declared name.
    Call(String),
    Send {
        event: String,
        target: Option<String>,
    },
    Io(String),
}
