//! Prefix s-expression syntax for fields.
//!
//! ```text
//! expr   := number | symbol | "(" op expr+ ")"
//! symbol := "x" | "x0" | "x1" | "pi" | "e"
//! op     := "+" | "-" | "*" | "/"          n-ary, folded left; "(- a)" negates
//!         | "^"   expr integer             integer power
//!         | "pow" expr constant            real power, positive base only
//!         | "sin" | "cos" | "exp" | "log"  unary
//! ```
//!
//! The exponent of `pow` may be any constant subexpression, e.g.
//! `(pow x0 (/ 1 2))`. The dimension of the parsed field is one more than the
//! largest coordinate index it mentions.

use super::FieldExpr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open(usize),
    Close(usize),
    Atom(usize, String),
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            '(' => {
                out.push(Token::Open(pos));
                chars.next();
            }
            ')' => {
                out.push(Token::Close(pos));
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut atom = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c == '(' || c == ')' || c.is_whitespace() {
                        break;
                    }
                    atom.push(c);
                    chars.next();
                }
                out.push(Token::Atom(pos, atom));
            }
        }
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    len: usize,
    alias: Option<&'a str>,
}

fn err(pos: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        reason: reason.into(),
    }
}

fn token_pos(t: &Token) -> usize {
    match t {
        Token::Open(p) | Token::Close(p) | Token::Atom(p, _) => *p,
    }
}

impl Parser<'_> {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn peek_close(&self) -> bool {
        matches!(self.tokens.get(self.at), Some(Token::Close(_)))
    }

    fn here(&self) -> usize {
        self.tokens.get(self.at).map_or(self.len, token_pos)
    }

    fn expr(&mut self) -> Result<FieldExpr> {
        match self.next() {
            None => Err(err(self.len, "unexpected end of input")),
            Some(Token::Close(p)) => Err(err(p, "unexpected `)`")),
            Some(Token::Atom(p, a)) => self.atom(p, &a),
            Some(Token::Open(p)) => {
                let op = match self.next() {
                    Some(Token::Atom(_, a)) => a,
                    _ => return Err(err(p, "expected operator after `(`")),
                };
                let mut args = Vec::new();
                while !self.peek_close() {
                    if self.at >= self.tokens.len() {
                        return Err(err(self.len, format!("unclosed `({op}`")));
                    }
                    args.push(self.expr()?);
                }
                self.next();
                apply(p, &op, args)
            }
        }
    }

    fn atom(&self, pos: usize, a: &str) -> Result<FieldExpr> {
        if Some(a) == self.alias {
            return Ok(FieldExpr::coord(0));
        }
        match a {
            "x" | "x0" => Ok(FieldExpr::coord(0)),
            "x1" => Ok(FieldExpr::coord(1)),
            "pi" => Ok(FieldExpr::constant(std::f64::consts::PI)),
            "e" => Ok(FieldExpr::constant(std::f64::consts::E)),
            _ => a
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(FieldExpr::constant)
                .ok_or_else(|| err(pos, format!("unknown symbol `{a}`"))),
        }
    }
}

fn constant_value(pos: usize, e: &FieldExpr) -> Result<f64> {
    if !e.is_constant() {
        return Err(err(pos, format!("exponent `{e}` must be constant")));
    }
    let zeros = vec![0.0; e.dim()];
    e.eval(&zeros)
}

fn apply(pos: usize, op: &str, args: Vec<FieldExpr>) -> Result<FieldExpr> {
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(err(
                pos,
                format!("`{op}` takes {n} argument(s), got {}", args.len()),
            ))
        }
    };
    let fold = |args: Vec<FieldExpr>, f: fn(FieldExpr, FieldExpr) -> FieldExpr| {
        let mut it = args.into_iter();
        let first = it
            .next()
            .ok_or_else(|| err(pos, format!("`{op}` needs arguments")))?;
        Ok(it.fold(first, f))
    };
    match op {
        "+" => fold(args, |a, b| a + b),
        "*" => fold(args, |a, b| a * b),
        "-" if args.len() == 1 => Ok(-args.into_iter().next().unwrap()),
        "-" => fold(args, |a, b| a - b),
        "/" if args.len() >= 2 => fold(args, |a, b| a / b),
        "/" => Err(err(pos, "`/` needs at least two arguments")),
        "^" => {
            arity(2)?;
            let k = constant_value(pos, &args[1])?;
            if k.fract() != 0.0 || k.abs() > i32::MAX as f64 {
                return Err(err(pos, format!("`^` needs an integer exponent, got {k}")));
            }
            Ok(args[0].powi(k as i32))
        }
        "pow" => {
            arity(2)?;
            let r = constant_value(pos, &args[1])?;
            Ok(args[0].powf(r))
        }
        "sin" | "cos" | "exp" | "log" => {
            arity(1)?;
            let a = &args[0];
            Ok(match op {
                "sin" => a.sin(),
                "cos" => a.cos(),
                "exp" => a.exp(),
                _ => a.ln(),
            })
        }
        _ => Err(err(pos, format!("unknown operator `{op}`"))),
    }
}

/// Parses a field written in prefix s-expression syntax.
pub fn parse_expr(text: &str) -> Result<FieldExpr> {
    parse_expr_with_alias(text, None)
}

/// Like [`parse_expr`], additionally reading the symbol `alias` as `x0`
/// (used for nonlinearities written in terms of `y`).
pub fn parse_expr_with_alias(text: &str, alias: Option<&str>) -> Result<FieldExpr> {
    let mut p = Parser {
        tokens: tokenize(text),
        at: 0,
        len: text.len(),
        alias,
    };
    let e = p.expr()?;
    if p.at < p.tokens.len() {
        return Err(err(p.here(), "trailing input"));
    }
    Ok(e)
}
