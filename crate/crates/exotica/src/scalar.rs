//! Exact scalars: Gaussian rationals and formal exponential sums.
//!
//! `GaussRat` is the field Q(i), stored as two `BigRational` components that
//! `num-rational` keeps in lowest terms with positive denominators, so `==`
//! is structural equality of values.
//!
//! `ExpScalar` is the group ring of (Q(i), +) over Q(i): a finite sum
//! `q_1*E(mu_1) + ... + q_n*E(mu_n)` where `E(mu)` is a formal symbol for
//! `e^mu`. Symbols are never evaluated numerically. Multiplication follows
//! `E(mu)*E(nu) = E(mu+nu)` and `E(0) = 1`. Because `{e^mu}` for distinct
//! algebraic `mu` is linearly independent over the algebraic numbers
//! (Lindemann-Weierstrass), a formally nonzero `ExpScalar` also denotes a
//! nonzero complex number, so exact zero tests here are sound for the
//! geometry built on top.
//!
//! Units of the ring are exactly the one-term elements `q*E(mu)`, `q != 0`,
//! with inverse `(1/q)*E(-mu)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// The exact rational scalar everything is built from.
pub type Rat = BigRational;

/// Convenience constructor for small rationals. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Render a rational as `n` or `n/d` (lowest terms, sign on the numerator).
pub(crate) fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A Gaussian rational re + im*i with exact components.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussRat {
    re: Rat,
    im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n, 1))
    }

    /// `num/den` as a real Gaussian rational. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rat(rat(num, den))
    }

    /// `num/den * i`. Panics when `den == 0`.
    pub fn imag(num: i64, den: i64) -> Self {
        GaussRat { re: Rat::zero(), im: rat(num, den) }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit i.
    pub fn unit_i() -> Self {
        Self::imag(1, 1)
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    pub fn pow_u(&self, k: u32) -> Self {
        let mut out = GaussRat::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// True when exactly one of the components is nonzero (or both are zero),
    /// so the value renders as a single atom like `3/2` or `-1*i`.
    pub(crate) fn is_simple(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }

    /// Sign used when joining sum terms: the sign of the leading component.
    pub(crate) fn is_display_negative(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }

    /// Render suitable for use as a multiplicative factor: complex values get
    /// parentheses so `(1+2*i)*E(1)` parses back unambiguously.
    pub(crate) fn factor_string(&self) -> String {
        if self.is_simple() {
            self.to_string()
        } else {
            format!("({})", self)
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if !self.re.is_zero() {
            write!(f, "{}", rat_string(&self.re))?;
            if !self.im.is_zero() {
                if self.im.is_negative() {
                    write!(f, "-{}*i", rat_string(&-self.im.clone()))?;
                } else {
                    write!(f, "+{}*i", rat_string(&self.im))?;
                }
            }
            Ok(())
        } else {
            write!(f, "{}*i", rat_string(&self.im))
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

/// A finite formal sum sum_j q_j * E(mu_j), canonical form: no zero
/// coefficients, exponents strictly increasing in the map order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpScalar {
    terms: BTreeMap<GaussRat, GaussRat>,
}

impl ExpScalar {
    pub fn zero() -> Self {
        ExpScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussRat::one())
    }

    pub fn from_gauss(q: GaussRat) -> Self {
        let mut s = Self::zero();
        s.insert(GaussRat::zero(), q);
        s
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_gauss(GaussRat::from_int(n))
    }

    /// The formal symbol E(mu) = e^mu.
    pub fn exp(mu: GaussRat) -> Self {
        Self::term(GaussRat::one(), mu)
    }

    /// A single term q * E(mu).
    pub fn term(q: GaussRat, mu: GaussRat) -> Self {
        let mut s = Self::zero();
        s.insert(mu, q);
        s
    }

    fn insert(&mut self, mu: GaussRat, q: GaussRat) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get() + &q;
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_gauss().map(|q| q.is_one()).unwrap_or(false)
    }

    /// Units are exactly the one-term elements.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// `(mu, q)` when the value is a single term `q*E(mu)`.
    pub fn unit_parts(&self) -> Option<(GaussRat, GaussRat)> {
        if self.terms.len() == 1 {
            let (mu, q) = self.terms.iter().next().unwrap();
            Some((mu.clone(), q.clone()))
        } else {
            None
        }
    }

    /// The Gaussian rational value when no genuine exponential is present.
    pub fn as_gauss(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (mu, q) = self.terms.iter().next().unwrap();
                if mu.is_zero() {
                    Some(q.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Inverse of a unit: (q*E(mu))^-1 = (1/q)*E(-mu).
    pub fn invert(&self) -> Result<Self, Error> {
        let (mu, q) = self.unit_parts().ok_or(Error::NotAUnit)?;
        let qi = q.inv().expect("canonical form stores no zero coefficients");
        Ok(Self::term(qi, -&mu))
    }

    pub fn scale(&self, q: &GaussRat) -> Self {
        let mut out = Self::zero();
        for (mu, c) in &self.terms {
            out.insert(mu.clone(), c * q);
        }
        out
    }

    pub fn pow_u(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GaussRat, &GaussRat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Render suitable for use as a multiplicative factor; multi-term sums
    /// and complex coefficients get parentheses.
    pub(crate) fn factor_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if self.terms.len() > 1 {
            return format!("({})", self);
        }
        let (mu, q) = self.terms.iter().next().unwrap();
        if mu.is_zero() {
            q.factor_string()
        } else if q.is_one() {
            format!("E({})", mu)
        } else {
            format!("{}*E({})", q.factor_string(), mu)
        }
    }
}

/// One displayable atom of a formal sum: its joining sign and the rendered
/// absolute part. Shared by the exp-polynomial displays.
pub(crate) fn push_atom(out: &mut String, negative: bool, body: &str) {
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    out.push_str(body);
}

impl fmt::Display for ExpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (mu, q) in &self.terms {
            if mu.is_zero() {
                // Constant part: emit re and im as separate flat atoms so the
                // sum grammar stays unambiguous without parentheses.
                if !q.re().is_zero() {
                    push_atom(&mut out, q.re().is_negative(), &rat_string(&q.re().abs()));
                }
                if !q.im().is_zero() {
                    let body = format!("{}*i", rat_string(&q.im().abs()));
                    push_atom(&mut out, q.im().is_negative(), &body);
                }
            } else if q.is_simple() {
                let abs = if q.is_display_negative() { -q } else { q.clone() };
                let body = if abs.is_one() {
                    format!("E({})", mu)
                } else {
                    format!("{}*E({})", abs.factor_string(), mu)
                };
                push_atom(&mut out, q.is_display_negative(), &body);
            } else {
                let body = format!("({})*E({})", q, mu);
                push_atom(&mut out, false, &body);
            }
        }
        write!(f, "{}", out)
    }
}

impl fmt::Debug for ExpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &ExpScalar {
    type Output = ExpScalar;
    fn add(self, rhs: &ExpScalar) -> ExpScalar {
        let mut out = self.clone();
        for (mu, q) in &rhs.terms {
            out.insert(mu.clone(), q.clone());
        }
        out
    }
}

impl Sub for &ExpScalar {
    type Output = ExpScalar;
    fn sub(self, rhs: &ExpScalar) -> ExpScalar {
        let mut out = self.clone();
        for (mu, q) in &rhs.terms {
            out.insert(mu.clone(), -q);
        }
        out
    }
}

impl Mul for &ExpScalar {
    type Output = ExpScalar;
    fn mul(self, rhs: &ExpScalar) -> ExpScalar {
        let mut out = ExpScalar::zero();
        for (mu, q) in &self.terms {
            for (nu, p) in &rhs.terms {
                out.insert(mu + nu, q * p);
            }
        }
        out
    }
}

impl Neg for &ExpScalar {
    type Output = ExpScalar;
    fn neg(self) -> ExpScalar {
        let mut out = ExpScalar::zero();
        for (mu, q) in &self.terms {
            out.insert(mu.clone(), -q);
        }
        out
    }
}
