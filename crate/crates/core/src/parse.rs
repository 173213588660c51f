//! Text grammar for polynomials.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := coeff ('*'? monom)* | monom ('*'? monom)*
//! monom := var ('^' nat)?
//! coeff := int | int '/' posint
//! var   := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace separates tokens and is otherwise ignored.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{is_identifier, Exponent, Poly, VarSet, MAX_VARS};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(v)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{ch}`") });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a Arc<VarSet>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Vec<(Exponent, Rational)>> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -Rational::one()
            }
            Some(Tok::Plus) => {
                self.bump();
                Rational::one()
            }
            _ => Rational::one(),
        };
        loop {
            let (e, c) = self.term()?;
            terms.push((e, c * &sign));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => {
                    self.bump();
                    sign = Rational::one();
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -Rational::one();
                }
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Exponent, Rational)> {
        let mut coeff = Rational::one();
        let mut exp = Exponent::zero(self.vars.arity());
        let mut saw_item = false;
        if let Some(Tok::Int(_)) = self.peek() {
            coeff = self.coeff()?;
            saw_item = true;
        }
        loop {
            match self.peek() {
                Some(Tok::Star) if saw_item => {
                    self.bump();
                    match self.peek() {
                        Some(Tok::Ident(_)) => self.monom(&mut exp)?,
                        _ => return self.err("expected a variable after `*`"),
                    }
                }
                Some(Tok::Ident(_)) => {
                    self.monom(&mut exp)?;
                    saw_item = true;
                }
                _ => break,
            }
        }
        if !saw_item {
            return self.err("expected a coefficient or a variable");
        }
        Ok((exp, coeff))
    }

    fn coeff(&mut self) -> Result<Rational> {
        let num = match self.bump() {
            Some(Tok::Int(v)) => v,
            _ => unreachable!(),
        };
        if let Some(Tok::Slash) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(d)) if !d.is_zero() => return Ok(Rational::new(num, d)),
                _ => {
                    self.at -= 1;
                    return self.err("expected a positive integer denominator");
                }
            }
        }
        Ok(Rational::from_integer(num))
    }

    fn monom(&mut self, exp: &mut Exponent) -> Result<()> {
        let pos = self.pos();
        let name = match self.bump() {
            Some(Tok::Ident(s)) => s,
            _ => unreachable!(),
        };
        let i = self.vars.index_of(&name).ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        let mut k: u32 = 1;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(v)) => {
                    k = u32::try_from(v).or_else(|_| {
                        self.at -= 1;
                        self.err("exponent too large")
                    })?;
                }
                _ => {
                    self.at -= 1;
                    return self.err("expected a natural exponent after `^`");
                }
            }
        }
        exp.set(i, exp.get(i).checked_add(k).ok_or(Error::Syntax { pos, msg: "exponent overflow".into() })?);
        Ok(())
    }
}

pub(crate) fn parse_poly(text: &str, vars: &Arc<VarSet>) -> Result<Poly> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty polynomial".into() });
    }
    let mut p = Parser { toks, at: 0, end: text.len(), vars };
    let terms = p.expr()?;
    Ok(Poly::from_terms(vars, terms))
}

/// Variable names in order of first appearance.
pub fn infer_vars(text: &str) -> Result<Arc<VarSet>> {
    let mut names: Vec<String> = Vec::new();
    for (_, t) in tokenize(text)? {
        if let Tok::Ident(s) = t {
            debug_assert!(is_identifier(&s));
            if !names.contains(&s) {
                names.push(s);
            }
        }
    }
    if names.len() > MAX_VARS {
        return Err(Error::ArityOverflow { arity: names.len(), max: MAX_VARS });
    }
    if names.is_empty() {
        names.push("x".into());
    }
    VarSet::new(names)
}
