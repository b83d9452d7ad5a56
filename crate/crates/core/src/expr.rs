//! Shared expression grammar for field literals, polynomials, group words and
//! group-algebra elements.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' ['-'] INT]
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication: `2a` is rejected, `2*a` is accepted.
//! Each consumer supplies a [`Ring`] that gives meaning to integers and
//! identifiers.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, start)),
            '-' => out.push((Tok::Minus, start)),
            '*' => out.push((Tok::Star, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::LParen, start)),
            ')' => out.push((Tok::RParen, start)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse::<u64>()
                    .map_err(|_| Error::parse(start, "integer literal too large"))?;
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => return Err(Error::parse(start, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub(crate) enum Expr {
    Int(u64, usize),
    Sym(String, usize),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Sum(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Diff(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = Expr::Prod(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            let at = self.offset();
            self.bump();
            let negative = if let Some(Tok::Minus) = self.peek() {
                self.bump();
                true
            } else {
                false
            };
            let here = self.offset();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let n = i64::try_from(n).map_err(|_| Error::parse(here, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }, at))
                }
                _ => Err(Error::parse(here, "expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n, at)),
            Some(Tok::Ident(s)) => Ok(Expr::Sym(s, at)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::parse(close, "expected `)`")),
                }
            }
            Some(_) => Err(Error::parse(at, "expected a number, a symbol or `(`")),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        let at = p.offset();
        let msg = match p.peek() {
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                "missing `*` between factors"
            }
            _ => "unexpected token",
        };
        return Err(Error::parse(at, msg));
    }
    Ok(e)
}

/// Interpretation of the grammar in some ring.
pub(crate) trait Ring {
    type V: Clone;
    fn int(&self, n: u64, pos: usize) -> Result<Self::V>;
    fn sym(&self, name: &str, pos: usize) -> Result<Self::V>;
    fn add(&self, a: Self::V, b: Self::V, pos: usize) -> Result<Self::V>;
    fn neg(&self, a: Self::V, pos: usize) -> Result<Self::V>;
    fn mul(&self, a: Self::V, b: Self::V, pos: usize) -> Result<Self::V>;
    fn one(&self) -> Self::V;

    /// Negative exponents are only meaningful for some rings.
    fn pow(&self, base: &Expr, exp: i64, pos: usize) -> Result<Self::V> {
        if exp < 0 {
            return Err(Error::parse(pos, "negative exponent is not allowed here"));
        }
        let b = eval(base, self)?;
        let mut acc = self.one();
        let mut sq = b;
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq.clone(), pos)?;
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(sq.clone(), sq, pos)?;
            }
        }
        Ok(acc)
    }
}

pub(crate) fn eval<R: Ring + ?Sized>(e: &Expr, r: &R) -> Result<R::V> {
    match e {
        Expr::Int(n, p) => r.int(*n, *p),
        Expr::Sym(s, p) => r.sym(s, *p),
        Expr::Neg(a) => {
            let v = eval(a, r)?;
            r.neg(v, 0)
        }
        Expr::Sum(a, b) => {
            let x = eval(a, r)?;
            let y = eval(b, r)?;
            r.add(x, y, 0)
        }
        Expr::Diff(a, b) => {
            let x = eval(a, r)?;
            let y = eval(b, r)?;
            let y = r.neg(y, 0)?;
            r.add(x, y, 0)
        }
        Expr::Prod(a, b) => {
            let x = eval(a, r)?;
            let y = eval(b, r)?;
            r.mul(x, y, 0)
        }
        Expr::Pow(b, n, p) => r.pow(b, *n, *p),
    }
}

/// Splits `text` at commas (or `sep`) that are not nested inside brackets.
pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Ints;
    impl Ring for Ints {
        type V = i64;
        fn int(&self, n: u64, _: usize) -> Result<i64> {
            Ok(n as i64)
        }
        fn sym(&self, name: &str, pos: usize) -> Result<i64> {
            match name {
                "x" => Ok(3),
                _ => Err(Error::parse(pos, "unknown")),
            }
        }
        fn add(&self, a: i64, b: i64, _: usize) -> Result<i64> {
            Ok(a + b)
        }
        fn neg(&self, a: i64, _: usize) -> Result<i64> {
            Ok(-a)
        }
        fn mul(&self, a: i64, b: i64, _: usize) -> Result<i64> {
            Ok(a * b)
        }
        fn one(&self) -> i64 {
            1
        }
    }

    fn ev(s: &str) -> Result<i64> {
        eval(&parse(s)?, &Ints)
    }

    #[test]
    fn precedence() {
        assert_eq!(ev("1+2*x^2").unwrap(), 19);
        assert_eq!(ev("-x+1").unwrap(), -2);
        assert_eq!(ev("(x+1)^2*2").unwrap(), 32);
        assert_eq!(ev("x - 1 - 1").unwrap(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(ev("2 x"), Err(Error::parse(2, "missing `*` between factors")));
        assert!(matches!(ev("(1+2"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(ev("y"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(ev(""), Err(Error::Parse { .. })));
        assert!(matches!(ev("1 $ 2"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn top_level_split() {
        assert_eq!(split_top_level("a,(b,c),[d,e]", ','), vec!["a", "(b,c)", "[d,e]"]);
    }
}
