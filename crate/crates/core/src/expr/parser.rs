use super::ast::*;
use super::lexer::{tokenize, Spanned, Tok};
use super::ParseError;

const KEYWORDS: &[&str] = &["and", "or", "not", "true", "false", "Sequence", "Set"];

pub(crate) struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: here.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, ParseError> {
        self.or_expr()
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.is_keyword("or") {
            self.bump();
            let rhs = self.and_expr()?;
            lhs = Expr::binary(BinaryOp::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.cmp_expr()?;
        while self.is_keyword("and") {
            self.bump();
            let rhs = self.cmp_expr()?;
            lhs = Expr::binary(BinaryOp::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn cmp_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.add_expr()?;
        loop {
            let op = match self.peek() {
                Tok::Eq => BinaryOp::Eq,
                Tok::Ne => BinaryOp::Ne,
                Tok::Lt => BinaryOp::Lt,
                Tok::Le => BinaryOp::Le,
                Tok::Gt => BinaryOp::Gt,
                Tok::Ge => BinaryOp::Ge,
                _ => break,
            };
            self.bump();
            let rhs = self.add_expr()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn add_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.mul_expr()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinaryOp::Add,
                Tok::Minus => BinaryOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.mul_expr()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn mul_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary_expr()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinaryOp::Mul,
                Tok::Slash => BinaryOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary_expr()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary_expr(&mut self) -> Result<Expr, ParseError> {
        if self.is_keyword("not") {
            self.bump();
            return Ok(Expr::unary(UnaryOp::Not, self.unary_expr()?));
        }
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::unary(UnaryOp::Neg, self.unary_expr()?));
        }
        self.postfix_expr()
    }

    fn postfix_expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        while *self.peek() == Tok::Arrow {
            self.bump();
            if !self.is_keyword("size") {
                return Err(self.error(&["`size`"]));
            }
            self.bump();
            self.expect(Tok::LParen, "`(`")?;
            self.expect(Tok::RParen, "`)`")?;
            e = Expr::Size(Box::new(e));
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Lit(Literal::Integer(v)))
            }
            Tok::Real(v) => {
                self.bump();
                Ok(Expr::Lit(Literal::Real(v)))
            }
            Tok::Str(s) => {
                self.bump();
                Ok(Expr::Lit(Literal::Str(s)))
            }
            Tok::Char(c) => {
                self.bump();
                Ok(Expr::Lit(Literal::Char(c)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(s) => match s.as_str() {
                "true" => {
                    self.bump();
                    Ok(Expr::flag(true))
                }
                "false" => {
                    self.bump();
                    Ok(Expr::flag(false))
                }
                "Sequence" | "Set" => {
                    let kind = if s == "Set" {
                        CollectionKind::Set
                    } else {
                        CollectionKind::Sequence
                    };
                    self.bump();
                    self.expect(Tok::LBrace, "`{`")?;
                    let mut items = Vec::new();
                    if *self.peek() != Tok::RBrace {
                        items.push(self.expr()?);
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            items.push(self.expr()?);
                        }
                    }
                    self.expect(Tok::RBrace, "`}`")?;
                    Ok(Expr::Collection(kind, items))
                }
                "and" | "or" | "not" => Err(self.error(&["expression"])),
                _ => {
                    self.bump();
                    Ok(Expr::Var(s))
                }
            },
            _ => Err(self.error(&[
                "literal",
                "identifier",
                "`(`",
                "`not`",
                "`-`",
                "`Sequence`",
                "`Set`",
            ])),
        }
    }

    pub(crate) fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let name = self.ident()?;
        match (name.as_str(), self.peek().clone()) {
            (_, Tok::Assign) | (_, Tok::Eq) => {
                self.bump();
                let value = self.expr()?;
                Ok(Stmt::Assign {
                    target: name,
                    value,
                })
            }
            ("send", Tok::LParen) => {
                self.bump();
                let event = self.ident()?;
                let target = if *self.peek() == Tok::Comma {
                    self.bump();
                    Some(self.ident()?)
                } else {
                    None
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(Stmt::Send { event, target })
            }
            ("send", Tok::Ident(_)) => {
                let event = self.ident()?;
                Ok(Stmt::Send {
                    event,
                    target: None,
                })
            }
            ("io", Tok::LParen) => {
                self.bump();
                let id = self.ident()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Stmt::Io(id))
            }
            ("io", Tok::Ident(_)) => Ok(Stmt::Io(self.ident()?)),
            ("call", Tok::Ident(_)) => Ok(Stmt::Call(self.ident()?)),
            (_, Tok::LParen) => {
                self.bump();
                self.expect(Tok::RParen, "`)`")?;
                Ok(Stmt::Call(name))
            }
            _ => Err(self.error(&["`:=`", "`=`", "`(`"])),
        }
    }

    pub(crate) fn stmts(&mut self) -> Result<Vec<Stmt>, ParseError> {
        let mut out = Vec::new();
        while *self.peek() != Tok::Eof {
            out.push(self.stmt()?);
            if *self.peek() == Tok::Semi {
                while *self.peek() == Tok::Semi {
                    self.bump();
                }
            } else if *self.peek() != Tok::Eof {
                return Err(self.error(&["`;`", "end of input"]));
            }
        }
        Ok(out)
    }
}
