//! Recursive-descent parser.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := ("-" | "+") unary | power
//! power   := primary ("^" unary)?
//! primary := number | "x" | "pi" | "e" | func "(" args ")" | "(" expr ")"
//! ```
//!
//! `^` binds tighter than unary minus and is right-associative.

use super::ast::{BinOp, Expr, ExprKind, Func, Span};
use super::lexer::{tokenize, Tok};
use super::ParseError;

/// Nesting limit for parentheses, unary operators and exponents.
pub const MAX_DEPTH: usize = 256;

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    depth: usize,
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    if src.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::Eof => Ok(e),
        other => Err(ParseError::Syntax {
            offset: p.span().start,
            message: format!("unexpected {}", other.describe()),
            expected: vec!["operator".into(), "end of input".into()],
        }),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(ParseError::TooDeep {
                offset: self.span().start,
            })
        } else {
            Ok(())
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(ParseError::Syntax {
                offset: self.span().start,
                message: format!("expected {what}, found {}", self.peek().describe()),
                expected: vec![what.to_string()],
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let out = match self.peek() {
            Tok::Minus => {
                let (_, span) = self.bump();
                let inner = self.unary()?;
                let span = span.to(inner.span);
                Ok(Expr::new(ExprKind::Neg(Box::new(inner)), span))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        };
        self.depth -= 1;
        out
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exponent = self.unary()?;
            Ok(binary(BinOp::Pow, base, exponent))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Number(v) => Ok(Expr::new(ExprKind::Number(v), span)),
            Tok::LParen => {
                self.enter()?;
                let inner = self.expr()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                self.depth -= 1;
                Ok(Expr::new(inner.kind, span.to(close)))
            }
            Tok::Ident(name) => self.identifier(name, span),
            other => Err(ParseError::Syntax {
                offset: span.start,
                message: format!("unexpected {}", other.describe()),
                expected: ["number", "x", "function", "`(`", "`-`"]
                    .map(String::from)
                    .to_vec(),
            }),
        }
    }

    fn identifier(&mut self, name: String, span: Span) -> Result<Expr, ParseError> {
        match name.as_str() {
            "x" => return Ok(Expr::new(ExprKind::Var, span)),
            "pi" => return Ok(Expr::new(ExprKind::Number(std::f64::consts::PI), span)),
            "e" => return Ok(Expr::new(ExprKind::Number(std::f64::consts::E), span)),
            _ => {}
        }
        let Some(func) = Func::lookup(&name) else {
            return Err(ParseError::UnknownIdentifier {
                offset: span.start,
                name,
            });
        };
        self.expect(Tok::LParen, "`(`")?;
        self.enter()?;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            args.push(self.expr()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.expr()?);
            }
        }
        let close = self.expect(Tok::RParen, "`)` or `,`")?;
        self.depth -= 1;
        if args.len() != func.arity() {
            return Err(ParseError::Arity {
                offset: span.start,
                name,
                expected: func.arity(),
                found: args.len(),
            });
        }
        Ok(Expr::new(ExprKind::Call { func, args }, span.to(close)))
    }
}

fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
    let span = lhs.span.to(rhs.span);
    Expr::new(
        ExprKind::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        },
        span,
    )
}
