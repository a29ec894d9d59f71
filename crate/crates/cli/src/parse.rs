//! Polynomial expressions in named variables.
//!
//! ```text
//! expr   := sign* term (('+' | '-') sign* term)*
//! term   := factor ('*'? factor)*        juxtaposition multiplies
//! factor := sign* atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! Runs of signs are folded, so `a +-b` reads as `a - b`. Whitespace is
//! insignificant except that it separates juxtaposed factors.

use std::fmt;

use num_bigint::BigInt;
use torfol::{QPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str, vars: &[String]) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(text[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &text[start..i];
            match vars.iter().position(|v| v == name) {
                Some(k) => out.push((start, Tok::Var(k))),
                None => {
                    return Err(ParseError { position: start, message: format!("unknown variable `{name}` (expected one of {})", vars.join(", ")) })
                }
            }
        } else {
            let ch = text[start..].chars().next().unwrap_or('?');
            if ch == '−' {
                out.push((start, Tok::Minus));
                i += ch.len_utf8();
                continue;
            }
            return Err(ParseError { position: start, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.here(), message: message.into() })
    }

    /// Consume a run of `+`/`-`; true if the net sign is negative.
    fn signs(&mut self) -> bool {
        let mut neg = false;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {}
                Tok::Minus => neg = !neg,
                _ => break,
            }
            self.pos += 1;
        }
        neg
    }

    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let neg = self.signs();
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        while matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
            let neg = self.signs();
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Var(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if matches!(self.peek(), Some(Tok::Star)) {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else if self.starts_atom() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<QPoly, ParseError> {
        let neg = self.signs();
        let base = self.atom()?;
        let value = if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    let e: u32 = match e.try_into() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                    self.pos += 1;
                    base.pow(e)
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        } else {
            base
        };
        Ok(if neg { -&value } else { value })
    }

    fn atom(&mut self) -> Result<QPoly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut c = Rational::from_integer(n);
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if d != BigInt::from(0) => {
                            self.pos += 1;
                            c /= Rational::from_integer(d);
                        }
                        Some(Tok::Int(_)) => return self.err("division by zero"),
                        _ => return self.err("expected an integer denominator"),
                    }
                }
                Ok(QPoly::constant(self.nvars, c))
            }
            Some(Tok::Var(k)) => {
                self.pos += 1;
                Ok(QPoly::var(self.nvars, k))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !matches!(self.peek(), Some(Tok::RParen)) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected {}", describe(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::Var(_) => "variable",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
    }
}

/// Parse `text` as a polynomial in the named variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<QPoly, ParseError> {
    let toks = lex(text, vars)?;
    if toks.is_empty() {
        return Err(ParseError { position: 0, message: "empty expression".into() });
    }
    let mut p = Parser { toks: &toks, pos: 0, end: text.len(), nvars: vars.len() };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return p.err(format!("unexpected {} after a complete expression", describe(&toks[p.pos].1)));
    }
    Ok(out)
}

/// `prefix1, …, prefixN`.
pub fn numbered(prefix: &str, n: usize, first: usize) -> Vec<String> {
    (first..first + n).map(|i| format!("{prefix}{i}")).collect()
}
