//! Univariate expression language for integrands.
//!
//! The only free variable is `x`. Builtins: `sin cos tan exp ln sqrt abs`
//! (one argument) and `pow(base, exponent)`. `pi` and `e` are folded into
//! numbers at parse time.

mod ast;
mod lexer;
mod parser;

pub use ast::{BinOp, Expr, ExprKind, Func, Span};
pub use parser::{parse, MAX_DEPTH};

use thiserror::Error;

use crate::error::Error;
use crate::quadrature::Integrand;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax {
        offset: usize,
        message: String,
        expected: Vec<String>,
    },
    #[error("unknown identifier `{name}` at byte {offset} (the only variable is `x`)")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("`{name}` at byte {offset} takes {expected} argument(s), found {found}")]
    Arity {
        offset: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("expression nested too deeply at byte {offset}")]
    TooDeep { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Empty => 0,
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::Arity { offset, .. }
            | ParseError::TooDeep { offset } => *offset,
        }
    }
}

/// A domain fault raised while evaluating at `x`.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{op}: {message} at x = {x} (bytes {}..{})", span.start, span.end)]
pub struct EvalError {
    pub op: &'static str,
    pub message: &'static str,
    pub x: f64,
    pub span: Span,
}

impl Expr {
    /// Double-precision evaluation. Every domain fault and every non-finite
    /// intermediate value is an error carrying the offending sub-expression.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let fault = |op, message| EvalError {
            op,
            message,
            x,
            span: self.span,
        };
        let v = match &self.kind {
            ExprKind::Number(v) => *v,
            ExprKind::Var => x,
            ExprKind::Neg(e) => -e.eval(x)?,
            ExprKind::Binary { op, lhs, rhs } => {
                let (l, r) = (lhs.eval(x)?, rhs.eval(x)?);
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div if r == 0.0 => return Err(fault("/", "division by zero")),
                    BinOp::Div => l / r,
                    BinOp::Pow => power(l, r).map_err(|m| fault("^", m))?,
                }
            }
            ExprKind::Call { func, args } => {
                let a = args[0].eval(x)?;
                match func {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Tan => a.tan(),
                    Func::Exp => a.exp(),
                    Func::Ln if a <= 0.0 => {
                        return Err(fault("ln", "logarithm of a nonpositive number"))
                    }
                    Func::Ln => a.ln(),
                    Func::Sqrt if a < 0.0 => {
                        return Err(fault("sqrt", "square root of a negative number"))
                    }
                    Func::Sqrt => a.sqrt(),
                    Func::Abs => a.abs(),
                    Func::Pow => {
                        let b = args[1].eval(x)?;
                        power(a, b).map_err(|m| fault("pow", m))?
                    }
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fault("overflow", "non-finite result"))
        }
    }

    pub fn into_integrand(self, description: impl Into<String>) -> Integrand {
        Integrand::fallible(description, move |x| {
            self.eval(x).map_err(|e| Error::Evaluation {
                x,
                message: e.to_string(),
            })
        })
    }
}

fn power(base: f64, exponent: f64) -> Result<f64, &'static str> {
    if base < 0.0 && exponent.fract() != 0.0 {
        Err("negative base with non-integer exponent")
    } else if base == 0.0 && exponent < 0.0 {
        Err("division by zero")
    } else {
        Ok(base.powf(exponent))
    }
}

/// Parses `src` and wraps it as an [`Integrand`] described by the source.
pub fn compile(src: &str) -> Result<Integrand, ParseError> {
    Ok(parse(src)?.into_integrand(src.trim()))
}
