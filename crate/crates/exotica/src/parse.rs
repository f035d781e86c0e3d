//! Parsers for the text grammars the crate renders.
//!
//! One expression grammar covers every scalar-like value: a sum of signed
//! products whose factors are rationals, `i`, `E(mu)`, `z` powers,
//! `exp(lambda*z)` factors, and parenthesized subexpressions. Parsing yields
//! an [`ExpPoly`]; narrower values (Gaussian rationals, formal scalars)
//! project out of it, so `parse(render(x)) == x` holds for every value the
//! crate prints:
//!
//! - rationals `-3/2`, Gaussian rationals `1/2+3*i`;
//! - scalars `2*E(1) - 1`, exp-polynomials `(E(-1) + 1)*z^2*exp(1*z)`;
//! - divisors `2[0] + [1+1*i]`;
//! - group elements `(t; f)` and `(t; mu; f)`, points `(z, w)`.
//!
//! Errors carry a line and column. Standalone value parsers report line 1;
//! the program runner re-parses fragments with their true line numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::exppoly::{Divisor, ExpPoly};
use crate::groups::{GdElement, GdpElement, SurfacePoint};
use crate::homogeneous::{GroupElement, HeisenbergElement, SpaceDescriptor, TranslationElement};
use crate::scalar::{ExpScalar, GaussRat, Rat};

/// A character cursor with line/column tracking.
pub(crate) struct Cursor<'a> {
    rest: &'a str,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str, line: u32) -> Self {
        Cursor { rest: text, line, col: 1 }
    }

    /// A cursor over a fragment cut out of a longer line, reporting the
    /// fragment's true position.
    pub(crate) fn new_at(text: &'a str, line: u32, col: u32) -> Self {
        Cursor { rest: text, line, col }
    }

    pub(crate) fn col(&self) -> u32 {
        self.col
    }

    pub(crate) fn line(&self) -> u32 {
        self.line
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, message: message.into() }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    /// The unconsumed tail of the input.
    pub(crate) fn remaining(&self) -> &'a str {
        self.rest
    }

    /// Skip `n` bytes of ASCII input that a caller consumed out of band.
    pub(crate) fn advance_bytes(&mut self, n: usize) {
        self.col += self.rest[..n].chars().count() as u32;
        self.rest = &self.rest[n..];
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.rest.chars().next()?;
        self.rest = &self.rest[c.len_utf8()..];
        self.col += 1;
        Some(c)
    }

    pub(crate) fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ' || c == '\t') {
            self.bump();
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest.is_empty()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c)))
        }
    }

    /// Eat an identifier `[A-Za-z_][A-Za-z0-9_]*`, if one starts here.
    pub(crate) fn eat_ident(&mut self) -> Option<String> {
        let mut chars = self.rest.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = self
            .rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest.len());
        let word = self.rest[..end].to_string();
        self.rest = &self.rest[end..];
        self.col += end as u32;
        Some(word)
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        // a keyword must not run into a longer identifier
        if self.rest.starts_with(word) {
            let next = self.rest[word.len()..].chars().next();
            if !matches!(next, Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                self.rest = &self.rest[word.len()..];
                self.col += word.len() as u32;
                return true;
            }
        }
        false
    }

    fn parse_uint_str(&mut self) -> Result<String, Error> {
        let end = self
            .rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest.len());
        if end == 0 {
            return Err(self.error("expected a digit"));
        }
        let digits = self.rest[..end].to_string();
        self.rest = &self.rest[end..];
        self.col += end as u32;
        Ok(digits)
    }

    pub(crate) fn parse_u32(&mut self) -> Result<u32, Error> {
        let digits = self.parse_uint_str()?;
        digits
            .parse::<u32>()
            .map_err(|_| self.error("number out of range"))
    }

    /// An unsigned rational `a` or `a/b` (the sign is handled by the sum).
    fn parse_unsigned_rat(&mut self) -> Result<Rat, Error> {
        let numer = self.parse_uint_str()?;
        let numer: BigInt = numer.parse().expect("digits parse as BigInt");
        if self.eat('/') {
            let denom = self.parse_uint_str()?;
            let denom: BigInt = denom.parse().expect("digits parse as BigInt");
            if denom.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rat::new(numer, denom))
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    /// One multiplicative factor of a product.
    fn parse_primary(&mut self) -> Result<ExpPoly, Error> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.parse_expr()?;
                self.skip_ws();
                self.expect(')')?;
                Ok(inner)
            }
            Some('E') if self.rest.starts_with("E(") => {
                self.bump();
                self.bump();
                let mu = self.parse_gauss_expr()?;
                self.skip_ws();
                self.expect(')')?;
                Ok(ExpPoly::constant(ExpScalar::exp(mu)))
            }
            Some('e') if self.eat_keyword("exp") => {
                self.expect('(')?;
                // frequencies never contain parentheses, so the factor ends
                // at the next `)` and must read `lambda*z`
                let Some(close) = self.rest.find(')') else {
                    return Err(self.error("unterminated exp factor"));
                };
                let inner = &self.rest[..close];
                let Some(lambda_text) = inner.strip_suffix("*z") else {
                    return Err(self.error("exp factor must end in `*z`"));
                };
                let mut sub = Cursor::new(lambda_text, self.line);
                sub.col = self.col;
                let lambda = sub.parse_gauss_expr()?;
                if !sub.at_end() {
                    return Err(sub.error("unexpected input in exp factor"));
                }
                self.rest = &self.rest[close + 1..];
                self.col += close as u32 + 1;
                Ok(ExpPoly::exp_z(lambda))
            }
            Some('z') if self.eat_keyword("z") => {
                let k = if self.eat('^') { self.parse_u32()? } else { 1 };
                Ok(ExpPoly::monomial(GaussRat::zero(), k, ExpScalar::one()))
            }
            Some('i') if self.eat_keyword("i") => {
                Ok(ExpPoly::from_gauss(GaussRat::unit_i()))
            }
            Some(c) if c.is_ascii_digit() => {
                let q = self.parse_unsigned_rat()?;
                Ok(ExpPoly::constant(ExpScalar::from_gauss(GaussRat::from_rat(q))))
            }
            _ => Err(self.error("expected a value")),
        }
    }

    fn parse_product(&mut self) -> Result<ExpPoly, Error> {
        let mut out = self.parse_primary()?;
        loop {
            self.skip_ws();
            if self.rest.starts_with('*') {
                self.bump();
                let next = self.parse_primary()?;
                out = &out * &next;
            } else {
                return Ok(out);
            }
        }
    }

    /// A full sum-of-products expression.
    pub(crate) fn parse_expr(&mut self) -> Result<ExpPoly, Error> {
        self.skip_ws();
        let negative = self.eat('-');
        self.skip_ws();
        let mut out = self.parse_product()?;
        if negative {
            out = -&out;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let term = self.parse_product()?;
                    out = &out + &term;
                }
                Some('-') => {
                    self.bump();
                    let term = self.parse_product()?;
                    out = &out - &term;
                }
                _ => return Ok(out),
            }
        }
    }

    /// An expression that must reduce to a formal scalar (no `z`, no `exp`).
    pub(crate) fn parse_scalar_expr(&mut self) -> Result<ExpScalar, Error> {
        let p = self.parse_expr()?;
        constant_of(&p).ok_or_else(|| self.error("expected a scalar (no z here)"))
    }

    /// An expression that must reduce to a Gaussian rational.
    pub(crate) fn parse_gauss_expr(&mut self) -> Result<GaussRat, Error> {
        let s = self.parse_scalar_expr()?;
        s.as_gauss()
            .ok_or_else(|| self.error("expected a Gaussian rational (no E here)"))
    }

    /// A divisor `n[lambda] + ...` with optional unit multiplicities.
    pub(crate) fn parse_divisor_expr(&mut self) -> Result<Divisor, Error> {
        let mut points: Vec<(GaussRat, u32)> = Vec::new();
        loop {
            self.skip_ws();
            let mult = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let m = self.parse_u32()?;
                if m == 0 {
                    return Err(self.error("multiplicity must be positive"));
                }
                m
            } else {
                1
            };
            self.expect('[')?;
            let lambda = self.parse_gauss_expr()?;
            self.skip_ws();
            self.expect(']')?;
            points.push((lambda, mult));
            self.skip_ws();
            if !self.eat('+') {
                break;
            }
        }
        Divisor::from_points(points).map_err(|_| self.error("empty divisor"))
    }

    /// A group element literal for the given plane's group.
    pub(crate) fn parse_element_expr(
        &mut self,
        space: &SpaceDescriptor,
    ) -> Result<GroupElement, Error> {
        self.skip_ws();
        self.expect('(')?;
        match space {
            SpaceDescriptor::Translation => {
                let a = self.parse_gauss_expr()?;
                self.skip_ws();
                self.expect(';')?;
                let b = self.parse_gauss_expr()?;
                self.skip_ws();
                self.expect(')')?;
                Ok(GroupElement::Translation(TranslationElement::new(a, b)))
            }
            SpaceDescriptor::Heisenberg => {
                let a = self.parse_gauss_expr()?;
                self.skip_ws();
                self.expect(';')?;
                let b = self.parse_gauss_expr()?;
                self.skip_ws();
                self.expect(';')?;
                let c = self.parse_gauss_expr()?;
                self.skip_ws();
                self.expect(')')?;
                Ok(GroupElement::Heisenberg(HeisenbergElement::new(a, b, c)))
            }
            SpaceDescriptor::Gd(d) => {
                let t = self.parse_gauss_expr()?;
                self.skip_ws();
                self.expect(';')?;
                let f = self.parse_expr()?;
                self.skip_ws();
                self.expect(')')?;
                Ok(GroupElement::Gd(GdElement::new(d.clone(), t, f)?))
            }
            SpaceDescriptor::Gdp(d) => {
                let t = self.parse_gauss_expr()?;
                self.skip_ws();
                self.expect(';')?;
                let mu = self.parse_scalar_expr()?;
                self.skip_ws();
                self.expect(';')?;
                let f = self.parse_expr()?;
                self.skip_ws();
                self.expect(')')?;
                Ok(GroupElement::Gdp(GdpElement::new(d.clone(), t, mu, f)?))
            }
        }
    }

    /// A plane point `(z, w)`.
    pub(crate) fn parse_point_expr(&mut self) -> Result<SurfacePoint, Error> {
        self.skip_ws();
        self.expect('(')?;
        let z = self.parse_gauss_expr()?;
        self.skip_ws();
        self.expect(',')?;
        let w = self.parse_scalar_expr()?;
        self.skip_ws();
        self.expect(')')?;
        Ok(SurfacePoint::new(z, w))
    }

    /// A pair of Gaussian rationals `(a, b)`.
    pub(crate) fn parse_gauss_pair(&mut self) -> Result<(GaussRat, GaussRat), Error> {
        self.skip_ws();
        self.expect('(')?;
        let a = self.parse_gauss_expr()?;
        self.skip_ws();
        self.expect(',')?;
        let b = self.parse_gauss_expr()?;
        self.skip_ws();
        self.expect(')')?;
        Ok((a, b))
    }
}

/// The scalar value of a constant exp-polynomial, if it is one.
fn constant_of(p: &ExpPoly) -> Option<ExpScalar> {
    let monos = p.monomials();
    match monos.as_slice() {
        [] => Some(ExpScalar::zero()),
        [(lambda, 0, _)] if lambda.is_zero() => {
            Some(monos.into_iter().next().expect("length checked").2)
        }
        _ => None,
    }
}

fn complete<T>(mut cursor: Cursor<'_>, value: Result<T, Error>) -> Result<T, Error> {
    let value = value?;
    if cursor.at_end() {
        Ok(value)
    } else {
        Err(cursor.error("unexpected trailing input"))
    }
}

pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let g = parse_gauss(text)?;
    if g.im().is_zero() {
        Ok(g.re().clone())
    } else {
        Err(Error::Parse { line: 1, col: 1, message: "expected a real rational".into() })
    }
}

pub fn parse_gauss(text: &str) -> Result<GaussRat, Error> {
    let mut c = Cursor::new(text, 1);
    let v = c.parse_gauss_expr();
    complete(c, v)
}

pub fn parse_exp_scalar(text: &str) -> Result<ExpScalar, Error> {
    let mut c = Cursor::new(text, 1);
    let v = c.parse_scalar_expr();
    complete(c, v)
}

pub fn parse_exp_poly(text: &str) -> Result<ExpPoly, Error> {
    let mut c = Cursor::new(text, 1);
    let v = c.parse_expr();
    complete(c, v)
}

pub fn parse_divisor(text: &str) -> Result<Divisor, Error> {
    let mut c = Cursor::new(text, 1);
    let v = c.parse_divisor_expr();
    complete(c, v)
}

pub fn parse_point(text: &str) -> Result<SurfacePoint, Error> {
    let mut c = Cursor::new(text, 1);
    let v = c.parse_point_expr();
    complete(c, v)
}

/// Parse a group element literal against the given plane.
pub fn parse_element(space: &SpaceDescriptor, text: &str) -> Result<GroupElement, Error> {
    let mut c = Cursor::new(text, 1);
    let v = c.parse_element_expr(space);
    complete(c, v)
}

impl FromStr for GaussRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss(s)
    }
}

impl FromStr for ExpScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_exp_scalar(s)
    }
}

impl FromStr for ExpPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_exp_poly(s)
    }
}

impl FromStr for Divisor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_divisor(s)
    }
}

impl FromStr for SurfacePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_point(s)
    }
}
