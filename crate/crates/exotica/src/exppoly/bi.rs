//! Bivariate exp-polynomials in `(s, t)`, the carrier for developing maps.
//!
//! A value is `sum_{(alpha,beta)} q_{alpha,beta}(s,t) e^{alpha s + beta t}`
//! with bivariate polynomial coefficients over `ExpScalar`. The only
//! substitutions offered are the ones that stay inside this ring:
//!
//! * `s -> s + c` for a Gaussian-rational `c` (always representable), and
//! * `t -> T(s,t)` for an arbitrary ring element `T` — representable for the
//!   polynomial part unconditionally, and for frequencies with `beta != 0`
//!   exactly when `T` is affine with Gaussian-rational coefficients
//!   (`T = m*t + g1*s + g2`), since only then is `e^{beta T}` again an
//!   exp-polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::uni::{monomial_atom, ExpPoly};
use crate::error::Error;
use crate::scalar::{push_atom, ExpScalar, GaussRat};

/// Bivariate polynomial: `(i, j) -> coefficient of s^i t^j`, no zeros stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), ExpScalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn constant(c: ExpScalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: ExpScalar) -> Self {
        let mut p = Poly2::zero();
        p.insert(i, j, c);
        p
    }

    fn insert(&mut self, i: u32, j: u32, c: ExpScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get() + &c;
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

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ExpScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> ExpScalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(ExpScalar::zero)
    }

    pub fn t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn add(&self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.insert(i, j, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            out.insert(i, j, -c);
        }
        out
    }

    pub fn mul(&self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.insert(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &ExpScalar) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), a) in &self.terms {
            out.insert(i, j, a * c);
        }
        out
    }

    pub fn eval(&self, s0: &GaussRat, t0: &GaussRat) -> ExpScalar {
        let mut acc = ExpScalar::zero();
        for (&(i, j), c) in &self.terms {
            let v = &s0.pow_u(i) * &t0.pow_u(j);
            acc = &acc + &c.scale(&v);
        }
        acc
    }

    fn partial(&self, on_s: bool) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            if on_s && i > 0 {
                out.insert(i - 1, j, c.scale(&GaussRat::from_int(i as i64)));
            }
            if !on_s && j > 0 {
                out.insert(i, j - 1, c.scale(&GaussRat::from_int(j as i64)));
            }
        }
        out
    }
}

/// Canonical sparse bivariate exp-polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly2 {
    parts: BTreeMap<(GaussRat, GaussRat), Poly2>,
}

impl ExpPoly2 {
    pub fn zero() -> Self {
        ExpPoly2 { parts: BTreeMap::new() }
    }

    pub fn constant(c: ExpScalar) -> Self {
        Self::monomial((GaussRat::zero(), GaussRat::zero()), (0, 0), c)
    }

    pub fn from_gauss(q: GaussRat) -> Self {
        Self::constant(ExpScalar::from_gauss(q))
    }

    pub fn var_s() -> Self {
        Self::monomial((GaussRat::zero(), GaussRat::zero()), (1, 0), ExpScalar::one())
    }

    pub fn var_t() -> Self {
        Self::monomial((GaussRat::zero(), GaussRat::zero()), (0, 1), ExpScalar::one())
    }

    /// `e^{alpha s + beta t}`.
    pub fn exp_st(alpha: GaussRat, beta: GaussRat) -> Self {
        Self::monomial((alpha, beta), (0, 0), ExpScalar::one())
    }

    pub fn monomial(freq: (GaussRat, GaussRat), pow: (u32, u32), c: ExpScalar) -> Self {
        let mut out = ExpPoly2::zero();
        out.insert(freq, Poly2::monomial(pow.0, pow.1, c));
        out
    }

    /// A univariate exp-polynomial `f(z)` read as a function of `s`.
    pub fn embed_s(f: &ExpPoly) -> Self {
        let mut out = ExpPoly2::zero();
        for (lambda, k, c) in f.monomials() {
            out.insert((lambda, GaussRat::zero()), Poly2::monomial(k, 0, c));
        }
        out
    }

    fn insert(&mut self, freq: (GaussRat, GaussRat), p: Poly2) {
        if p.is_zero() {
            return;
        }
        match self.parts.entry(freq) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get().add(&p);
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&(GaussRat, GaussRat), &Poly2)> {
        self.parts.iter()
    }

    pub fn scale(&self, c: &ExpScalar) -> Self {
        let mut out = ExpPoly2::zero();
        for (freq, p) in &self.parts {
            out.insert(freq.clone(), p.scale(c));
        }
        out
    }

    /// Multiplication by `e^{alpha s + beta t}`.
    pub fn mul_exp(&self, alpha: &GaussRat, beta: &GaussRat) -> Self {
        let mut out = ExpPoly2::zero();
        for ((a, b), p) in &self.parts {
            out.insert((a + alpha, b + beta), p.clone());
        }
        out
    }

    pub fn pow_u(&self, k: u32) -> Self {
        let mut out = ExpPoly2::constant(ExpScalar::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// d/ds: `e^{alpha s + beta t} q -> e^{...} (alpha q + q_s)`.
    pub fn partial_s(&self) -> Self {
        let mut out = ExpPoly2::zero();
        for ((a, b), p) in &self.parts {
            let dp = p.partial(true).add(&p.scale(&ExpScalar::from_gauss(a.clone())));
            out.insert((a.clone(), b.clone()), dp);
        }
        out
    }

    /// d/dt: `e^{alpha s + beta t} q -> e^{...} (beta q + q_t)`.
    pub fn partial_t(&self) -> Self {
        let mut out = ExpPoly2::zero();
        for ((a, b), p) in &self.parts {
            let dp = p.partial(false).add(&p.scale(&ExpScalar::from_gauss(b.clone())));
            out.insert((a.clone(), b.clone()), dp);
        }
        out
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval(&self, s0: &GaussRat, t0: &GaussRat) -> ExpScalar {
        let mut acc = ExpScalar::zero();
        for ((a, b), p) in &self.parts {
            let unit = ExpScalar::exp(&(a * s0) + &(b * t0));
            acc = &acc + &(&p.eval(s0, t0) * &unit);
        }
        acc
    }

    /// `Some(c)` when the value is exactly `s + c` with rational `c`.
    pub fn as_s_plus_const(&self) -> Option<GaussRat> {
        if self.parts.len() != 1 {
            return None;
        }
        let (freq, p) = self.parts.iter().next().unwrap();
        if !freq.0.is_zero() || !freq.1.is_zero() {
            return None;
        }
        let mut c = GaussRat::zero();
        for (&(i, j), coef) in p.terms() {
            match (i, j) {
                (1, 0) => {
                    if !coef.is_one() {
                        return None;
                    }
                }
                (0, 0) => c = coef.as_gauss()?,
                _ => return None,
            }
        }
        // the s term must actually be present
        if p.coeff(1, 0).is_one() {
            Some(c)
        } else {
            None
        }
    }

    /// `Some((m, g1, g2))` when the value is `m t + g1 s + g2` with
    /// Gaussian-rational coefficients (the shape that can sit inside an
    /// exponential).
    pub fn rational_affine(&self) -> Option<(GaussRat, GaussRat, GaussRat)> {
        let mut m = GaussRat::zero();
        let mut g1 = GaussRat::zero();
        let mut g2 = GaussRat::zero();
        for (freq, p) in &self.parts {
            if !freq.0.is_zero() || !freq.1.is_zero() {
                return None;
            }
            for (&(i, j), coef) in p.terms() {
                let q = coef.as_gauss()?;
                match (i, j) {
                    (0, 0) => g2 = q,
                    (1, 0) => g1 = q,
                    (0, 1) => m = q,
                    _ => return None,
                }
            }
        }
        Some((m, g1, g2))
    }

    /// Decompose as `A(s) * t + B(s)` when no exponential involves `t` and the
    /// polynomial degree in `t` is at most one.
    pub fn affine_in_t(&self) -> Option<(ExpPoly, ExpPoly)> {
        let mut a = ExpPoly::zero();
        let mut b = ExpPoly::zero();
        for ((al, be), p) in &self.parts {
            if !be.is_zero() {
                return None;
            }
            for (&(i, j), coef) in p.terms() {
                let mono = ExpPoly::monomial(al.clone(), i, coef.clone());
                match j {
                    0 => b = &b + &mono,
                    1 => a = &a + &mono,
                    _ => return None,
                }
            }
        }
        Some((a, b))
    }

    /// The simultaneous substitution `s -> s + c`, `t -> T`. Errors when a
    /// frequency with `beta != 0` meets a `T` that is not rational-affine.
    pub fn substitute(&self, c: &GaussRat, t_new: &ExpPoly2) -> Result<ExpPoly2, Error> {
        let s_new = &ExpPoly2::var_s() + &ExpPoly2::from_gauss(c.clone());
        let affine = t_new.rational_affine();
        let mut out = ExpPoly2::zero();
        for ((al, be), q) in &self.parts {
            // q(s + c, T), computed in the ring
            let mut poly_part = ExpPoly2::zero();
            for (&(i, j), coef) in q.terms() {
                let m = &s_new.pow_u(i) * &t_new.pow_u(j);
                poly_part = &poly_part + &m.scale(coef);
            }
            // e^{alpha (s+c) + beta T}
            let factor = if be.is_zero() {
                ExpPoly2::monomial(
                    (al.clone(), GaussRat::zero()),
                    (0, 0),
                    ExpScalar::exp(al * c),
                )
            } else {
                let (m, g1, g2) = affine.clone().ok_or(Error::UnsupportedSubstitution)?;
                ExpPoly2::monomial(
                    (al + &(be * &g1), be * &m),
                    (0, 0),
                    ExpScalar::exp(&(al * c) + &(be * &g2)),
                )
            };
            out = &out + &(&factor * &poly_part);
        }
        Ok(out)
    }

    /// Substitution by the affine deck map `(s, t) -> (s + g3, t + g1 s + g2)`.
    pub fn substitute_deck(&self, g1: &GaussRat, g2: &GaussRat, g3: &GaussRat) -> ExpPoly2 {
        let t_new = &(&ExpPoly2::var_t()
            + &ExpPoly2::var_s().scale(&ExpScalar::from_gauss(g1.clone())))
            + &ExpPoly2::from_gauss(g2.clone());
        self.substitute(g3, &t_new)
            .expect("affine deck substitution is always representable")
    }
}

impl Add for &ExpPoly2 {
    type Output = ExpPoly2;
    fn add(self, rhs: &ExpPoly2) -> ExpPoly2 {
        let mut out = self.clone();
        for (freq, p) in &rhs.parts {
            out.insert(freq.clone(), p.clone());
        }
        out
    }
}

impl Sub for &ExpPoly2 {
    type Output = ExpPoly2;
    fn sub(self, rhs: &ExpPoly2) -> ExpPoly2 {
        self + &-rhs
    }
}

impl Neg for &ExpPoly2 {
    type Output = ExpPoly2;
    fn neg(self) -> ExpPoly2 {
        let mut out = ExpPoly2::zero();
        for (freq, p) in &self.parts {
            out.insert(freq.clone(), p.neg());
        }
        out
    }
}

impl Mul for &ExpPoly2 {
    type Output = ExpPoly2;
    fn mul(self, rhs: &ExpPoly2) -> ExpPoly2 {
        let mut out = ExpPoly2::zero();
        for ((a0, b0), p) in &self.parts {
            for ((a1, b1), q) in &rhs.parts {
                out.insert((a0 + a1, b0 + b1), p.mul(q));
            }
        }
        out
    }
}

impl fmt::Display for ExpPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for ((al, be), p) in &self.parts {
            for (&(i, j), c) in p.terms() {
                let mut vars: Vec<String> = Vec::new();
                match i {
                    0 => {}
                    1 => vars.push("s".into()),
                    _ => vars.push(format!("s^{}", i)),
                }
                match j {
                    0 => {}
                    1 => vars.push("t".into()),
                    _ => vars.push(format!("t^{}", j)),
                }
                if !al.is_zero() || !be.is_zero() {
                    let mut inner = String::new();
                    if !al.is_zero() {
                        inner.push_str(&format!("{}*s", al.factor_string()));
                    }
                    if !be.is_zero() {
                        let bs = format!("{}*t", be.factor_string());
                        if !inner.is_empty() && !bs.starts_with('-') {
                            inner.push('+');
                        }
                        inner.push_str(&bs);
                    }
                    vars.push(format!("exp({})", inner));
                }
                let (neg, body) = monomial_atom(c, &vars);
                push_atom(&mut out, neg, &body);
            }
        }
        write!(f, "{}", out)
    }
}

impl fmt::Debug for ExpPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
