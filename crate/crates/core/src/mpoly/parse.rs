//! Text form of polynomials.
//!
//! Output is canonical: terms in descending graded-lex order, variables named
//! `x0..xN`, coefficients `c*` in front (omitted when ±1), powers as `x0^3`.
//! Input additionally accepts `x`, `y`, `z` for rings of at most three
//! variables, parentheses, and division by constants (`x1/2`).

use std::fmt;

use num_bigint::BigInt;

use crate::coeff::Scalar;
use crate::error::{Error, Result};

use super::poly::Polynomial;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Op(char),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos] as char;
            let start = self.pos;
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else if c.is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                out.push((start, Tok::Num(s.parse().unwrap())));
            } else if c.is_ascii_alphabetic() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = match name {
                    "x" | "y" | "z" if self.nvars <= 3 => {
                        (name.as_bytes()[0] - b'x') as usize
                    }
                    _ => match name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                        Some(i) => i,
                        _ => {
                            self.pos = start;
                            return Err(self.err(format!("unknown variable {name:?}")));
                        }
                    },
                };
                if idx >= self.nvars {
                    self.pos = start;
                    return Err(self.err(format!(
                        "variable {name} out of range for {} variables",
                        self.nvars
                    )));
                }
                out.push((start, Tok::Var(idx)));
            } else if "+-*/^()".contains(c) {
                self.pos += 1;
                out.push((start, Tok::Op(c)));
            } else {
                return Err(self.err(format!("unexpected character {c:?}")));
            }
        }
        Ok(out)
    }
}

struct Parser<'f, K: Scalar> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    nvars: usize,
    field: &'f K::Field,
}

impl<K: Scalar> Parser<'_, K> {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos(), msg: msg.into() }
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.i), Some((_, Tok::Op(o))) if *o == c)
    }

    fn expr(&mut self) -> Result<Polynomial<K>> {
        let mut acc = Polynomial::zero(self.nvars, self.field.clone());
        let mut first = true;
        loop {
            let neg = if self.peek_op('+') {
                self.i += 1;
                false
            } else if self.peek_op('-') {
                self.i += 1;
                true
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc - t } else { acc + t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<K>> {
        let mut acc = self.factor()?;
        loop {
            if self.peek_op('*') {
                self.i += 1;
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.peek_op('/') {
                self.i += 1;
                let f = self.factor()?;
                let c = f
                    .constant_value()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| self.err("division by a non-constant or zero"))?;
                acc = acc.scale(&c.inv().ok_or_else(|| self.err("division by zero"))?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<K>> {
        let base = self.primary()?;
        if self.peek_op('^') {
            self.i += 1;
            match self.toks.get(self.i) {
                Some((_, Tok::Num(n))) => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.i += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial<K>> {
        match self.toks.get(self.i).cloned() {
            Some((_, Tok::Num(n))) => {
                self.i += 1;
                Ok(Polynomial::constant(self.nvars, K::from_bigint(self.field, &n)))
            }
            Some((_, Tok::Var(v))) => {
                self.i += 1;
                Ok(Polynomial::var(self.nvars, self.field.clone(), v))
            }
            Some((_, Tok::Op('('))) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.peek_op(')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(_) => Err(self.err("unexpected token")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a polynomial in `nvars` variables over `field`.
pub fn parse_poly<K: Scalar>(src: &str, nvars: usize, field: &K::Field) -> Result<Polynomial<K>> {
    let toks = Lexer { src: src.as_bytes(), pos: 0, nvars }.tokens()?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
    }
    let mut p = Parser::<K> { toks, i: 0, end: src.len(), nvars, field };
    let out = p.expr()?;
    if p.i != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parses `[f0, f1, ...]`; the number of entries fixes the number of variables.
pub fn parse_poly_list<K: Scalar>(src: &str, field: &K::Field) -> Result<Vec<Polynomial<K>>> {
    let s = src.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or(Error::Parse { pos: 0, msg: "expected a bracketed list".into() })?;
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    let n = parts.len();
    parts.iter().map(|p| parse_poly(p, n, field)).collect()
}

impl<K: Scalar> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms().rev() {
            let mut body = String::new();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !body.is_empty() {
                    body.push('*');
                }
                body.push_str(&format!("x{i}"));
                if e > 1 {
                    body.push_str(&format!("^{e}"));
                }
            }
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            let text = if body.is_empty() {
                mag
            } else if mag == "1" {
                body
            } else {
                format!("{mag}*{body}")
            };
            if neg {
                write!(f, "-{text}")?;
            } else if first {
                write!(f, "{text}")?;
            } else {
                write!(f, "+{text}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rational, Rationals};
    use crate::mpoly::Monomial;

    #[test]
    fn canonical_output() {
        let p = parse_poly::<Rational>("y^2 + 2*x*y + x^2 - 3/2*z", 3, &Rationals).unwrap();
        assert_eq!(p.to_string(), "x0^2+2*x0*x1+x1^2-3/2*x2");
        let q = parse_poly::<Rational>("x1/2", 3, &Rationals).unwrap();
        assert_eq!(q.to_string(), "1/2*x1");
        let r = parse_poly::<Rational>("-x2/3", 3, &Rationals).unwrap();
        assert_eq!(r.to_string(), "-1/3*x2");
        let c = parse_poly::<Rational>("-7", 2, &Rationals).unwrap();
        assert_eq!(c.to_string(), "-7");
    }

    #[test]
    fn round_trip_prime_field() {
        let f = PrimeField::new(101);
        let p: Polynomial<crate::coeff::Fp> = parse_poly("x0^3 - x1/2 + 100", 2, &f).unwrap();
        let printed = p.to_string();
        assert_eq!(parse_poly(&printed, 2, &f).unwrap(), p);
        assert_eq!(p.coeff(&Monomial::new(&[0, 0])).symmetric(), -1);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_poly::<Rational>("x3", 3, &Rationals).is_err());
        assert!(parse_poly::<Rational>("w", 3, &Rationals).is_err());
        assert!(parse_poly::<Rational>("x^", 3, &Rationals).is_err());
        assert!(parse_poly::<Rational>("x/y", 3, &Rationals).is_err());
        assert!(parse_poly::<Rational>("", 3, &Rationals).is_err());
        // aliases only for small rings
        assert!(parse_poly::<Rational>("x", 4, &Rationals).is_err());
    }

    #[test]
    fn lists() {
        let fs = parse_poly_list::<Rational>("[x0, x1/2, -x2/3]", &Rationals).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[2].to_string(), "-1/3*x2");
        let g = parse_poly_list::<Rational>("[x0^2+7*x1^2, x1^2, x2^2]", &Rationals).unwrap();
        assert_eq!(g[0].to_string(), "x0^2+7*x1^2");
    }
}
