//! Text format for differential polynomials.
//!
//! Terms are joined by `+`/`-`; a term is a product of factors separated by
//! `*`. Factors are integer or `p/q` coefficients, parenthesized
//! subexpressions, or variable tokens with an optional `^e`:
//!
//! | token        | meaning                   |
//! |--------------|---------------------------|
//! | `x3`, `z0`   | base coordinates          |
//! | `dx1`, `d2x1`| `d x_1`, `d² x_1`         |
//! | `xi2_1`      | `ξ^(2)_1`                 |
//! | `lx1_3`      | `d log x_3`               |
//! | `L1_2`       | `Λ^(2)_1 = d² log F_1`    |
//! | `a[2,0,1]`   | coefficient `α_(2,0,1)`   |
//! | `nu0`        | symbolic component `ν_0`  |
//!
//! Whitespace is insignificant and `parse(print(p)) = p`.

use std::fmt;
use std::str::FromStr;

use num::{One, Signed};

use crate::error::{PolyError, Result};
use crate::multi_index::MultiIndex;
use crate::poly::DiffPoly;
use crate::scalar::{self, Scalar};
use crate::var::Var;

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", scalar::to_text(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", scalar::to_text(&a))?;
            }
        }
        Ok(())
    }
}

impl FromStr for DiffPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<DiffPoly> {
        parse_poly(s)
    }
}

/// Parses the text format.
pub fn parse_poly(text: &str) -> Result<DiffPoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let poly = p.expression()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

/// Parses a single variable token such as `d2x1` or `xi1_0`.
pub fn parse_var(text: &str) -> Result<Var> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let v = p.variable()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn raw_peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expression(&mut self) -> Result<DiffPoly> {
        let mut total = DiffPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            if sign < 0 {
                total -= t;
            } else {
                total += t;
            }
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(total),
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DiffPoly> {
        let base = match self.peek() {
            None => return Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                self.expect(b')')?;
                inner
            }
            Some(c) if c.is_ascii_digit() => return Ok(DiffPoly::constant(self.number()?)),
            Some(_) => DiffPoly::var(self.variable()?),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let p = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let q = self.digits()?;
            if q.chars().all(|c| c == '0') {
                self.pos = start;
                return Err(self.error("zero denominator"));
            }
            return scalar::parse_scalar(&format!("{p}/{q}")).map_err(|_| self.error("invalid rational"));
        }
        scalar::parse_scalar(&p).map_err(|_| self.error("invalid integer"))
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.raw_peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn uint(&mut self) -> Result<u32> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.error("integer out of range"))
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn pair(&mut self) -> Result<(u32, u32)> {
        let a = self.uint()?;
        if !self.eat("_") {
            return Err(self.error("expected `_`"));
        }
        let b = self.uint()?;
        Ok((a, b))
    }

    fn variable(&mut self) -> Result<Var> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("xi") {
            let (l, j) = self.pair()?;
            if l == 0 {
                self.pos = start;
                return Err(self.error("xi order must be at least 1"));
            }
            return Ok(Var::xi(l, j));
        }
        if self.eat("lx") {
            let (l, j) = self.pair()?;
            if l == 0 {
                self.pos = start;
                return Err(self.error("log-differential order must be at least 1"));
            }
            return Ok(Var::log_x(l, j));
        }
        if self.eat("nu") {
            return Ok(Var::nu(self.uint()?));
        }
        if self.eat("L") {
            let (i, l) = self.pair()?;
            if l == 0 {
                self.pos = start;
                return Err(self.error("log symbol order must be at least 1"));
            }
            return Ok(Var::log_f(i, l));
        }
        if self.eat("a[") {
            let mut comps = Vec::new();
            loop {
                self.skip_ws();
                comps.push(self.uint()?);
                self.skip_ws();
                if self.eat("]") {
                    break;
                }
                if !self.eat(",") {
                    return Err(self.error("expected `,` or `]` in multi-index"));
                }
            }
            return Ok(Var::alpha(MultiIndex::new(comps)));
        }
        if self.eat("x") {
            return Ok(Var::x(self.uint()?));
        }
        if self.eat("z") {
            return Ok(Var::z(self.uint()?));
        }
        if self.eat("d") {
            let order = if self.raw_peek().is_some_and(|c| c.is_ascii_digit()) { self.uint()? } else { 1 };
            if order == 0 {
                self.pos = start;
                return Err(self.error("differential order must be at least 1"));
            }
            if self.eat("x") {
                return Ok(Var::dx(order, self.uint()?));
            }
            if self.eat("z") {
                return Ok(Var::dz(order, self.uint()?));
            }
            return Err(self.error("expected `x` or `z` after differential prefix"));
        }
        Err(self.error("unknown token"))
    }
}
