//! Univariate exp-polynomials `sum_lambda p_lambda(z) e^{lambda z}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::divisor::Divisor;
use super::poly::Poly;
use crate::error::Error;
use crate::scalar::{ExpScalar, GaussRat};

/// Canonical sparse form: map from frequency `lambda` to the nonzero
/// polynomial coefficient `p_lambda`. Structural equality decides equality of
/// the represented functions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    parts: BTreeMap<GaussRat, Poly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly { parts: BTreeMap::new() }
    }

    pub fn constant(c: ExpScalar) -> Self {
        Self::from_parts([(GaussRat::zero(), Poly::constant(c))])
    }

    pub fn from_gauss(q: GaussRat) -> Self {
        Self::constant(ExpScalar::from_gauss(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(ExpScalar::from_int(n))
    }

    /// The coordinate function z.
    pub fn var_z() -> Self {
        Self::from_parts([(GaussRat::zero(), Poly::var())])
    }

    /// `e^{lambda z}`.
    pub fn exp_z(lambda: GaussRat) -> Self {
        Self::from_parts([(lambda, Poly::constant(ExpScalar::one()))])
    }

    /// `c * z^k * e^{lambda z}`.
    pub fn monomial(lambda: GaussRat, k: u32, c: ExpScalar) -> Self {
        Self::from_parts([(lambda, Poly::monomial(k, c))])
    }

    pub(crate) fn from_parts<I: IntoIterator<Item = (GaussRat, Poly)>>(parts: I) -> Self {
        let mut out = ExpPoly::zero();
        for (lambda, p) in parts {
            out.insert(lambda, p);
        }
        out
    }

    fn insert(&mut self, lambda: GaussRat, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.parts.entry(lambda) {
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

    pub fn frequencies(&self) -> impl Iterator<Item = &GaussRat> {
        self.parts.keys()
    }

    /// Degree of the polynomial part at a frequency, `None` when absent.
    pub fn degree_at(&self, lambda: &GaussRat) -> Option<u32> {
        self.parts.get(lambda).and_then(|p| p.degree())
    }

    /// Coefficient of `z^k e^{lambda z}`.
    pub fn coeff(&self, lambda: &GaussRat, k: u32) -> ExpScalar {
        self.parts.get(lambda).map(|p| p.coeff(k)).unwrap_or_else(ExpScalar::zero)
    }

    /// All monomials `(lambda, k, coefficient)` in canonical order.
    pub fn monomials(&self) -> Vec<(GaussRat, u32, ExpScalar)> {
        let mut out = Vec::new();
        for (lambda, p) in &self.parts {
            for (k, c) in p.iter() {
                if !c.is_zero() {
                    out.push((lambda.clone(), k, c.clone()));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &ExpScalar) -> Self {
        let mut out = ExpPoly::zero();
        for (lambda, p) in &self.parts {
            out.insert(lambda.clone(), p.scale(c));
        }
        out
    }

    /// Multiplication by `e^{a z}`: shifts every frequency by `a`.
    pub fn mul_exp(&self, a: &GaussRat) -> Self {
        let mut out = ExpPoly::zero();
        for (lambda, p) in &self.parts {
            out.insert(lambda + a, p.clone());
        }
        out
    }

    pub fn pow_u(&self, k: u32) -> Self {
        let mut out = ExpPoly::from_int(1);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Argument shift `f(z) -> f(z - t)`. Each block picks up the unit
    /// `E(-lambda t)` and its polynomial is Taylor-shifted.
    pub fn shift_arg(&self, t: &GaussRat) -> Self {
        let mut out = ExpPoly::zero();
        for (lambda, p) in &self.parts {
            let unit = ExpScalar::exp(-&(lambda * t));
            out.insert(lambda.clone(), p.shift(&-t).scale(&unit));
        }
        out
    }

    /// Argument scaling `f(z) -> f(mu z)` for nonzero `mu`.
    pub fn scale_arg(&self, mu: &GaussRat) -> Result<Self, Error> {
        if mu.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut out = ExpPoly::zero();
        for (lambda, p) in &self.parts {
            out.insert(lambda * mu, p.scale_arg(mu));
        }
        Ok(out)
    }

    /// d/dz, using `(p e^{lambda z})' = (p' + lambda p) e^{lambda z}`.
    pub fn diff(&self) -> Self {
        let mut out = ExpPoly::zero();
        for (lambda, p) in &self.parts {
            let dp = p
                .derivative()
                .add(&p.scale(&ExpScalar::from_gauss(lambda.clone())));
            out.insert(lambda.clone(), dp);
        }
        out
    }

    /// One factor `(d/dz - a)` applied to `self`.
    pub fn apply_linear_factor(&self, a: &GaussRat) -> Self {
        &self.diff() - &self.scale(&ExpScalar::from_gauss(a.clone()))
    }

    /// The full annihilator `P_D = prod (d/dz - lambda_j)^{n_j}` applied to
    /// `self`. Zero exactly on `V_D`.
    pub fn pd_apply(&self, d: &Divisor) -> Self {
        let mut out = self.clone();
        for (lambda, n) in d.points() {
            for _ in 0..n {
                out = out.apply_linear_factor(lambda);
            }
        }
        out
    }

    /// Structural membership in `V_D`: every stored frequency is a divisor
    /// point and each polynomial degree stays below its multiplicity. This is
    /// equivalent to `pd_apply(d).is_zero()`.
    pub fn in_vd(&self, d: &Divisor) -> bool {
        self.parts.iter().all(|(lambda, p)| match p.degree() {
            Some(deg) => deg < d.multiplicity(lambda),
            None => true,
        })
    }

    /// Exact evaluation at a Gaussian-rational point: `e^{lambda z0}` becomes
    /// the formal unit `E(lambda z0)`.
    pub fn eval(&self, z0: &GaussRat) -> ExpScalar {
        let mut acc = ExpScalar::zero();
        for (lambda, p) in &self.parts {
            let unit = ExpScalar::exp(lambda * z0);
            acc = &acc + &(&p.eval(z0) * &unit);
        }
        acc
    }
}

/// The canonical monomial basis of `V_D`: frequencies ascending, powers
/// ascending within each frequency. Its length is `degree(D)`.
pub fn vd_basis(d: &Divisor) -> Vec<ExpPoly> {
    let mut out = Vec::with_capacity(d.degree() as usize);
    for (lambda, n) in d.points() {
        for k in 0..n {
            out.push(ExpPoly::monomial(lambda.clone(), k, ExpScalar::one()));
        }
    }
    out
}

impl Add for &ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (lambda, p) in &rhs.parts {
            out.insert(lambda.clone(), p.clone());
        }
        out
    }
}

impl Sub for &ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        self + &-rhs
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (lambda, p) in &self.parts {
            out.insert(lambda.clone(), p.neg());
        }
        out
    }
}

impl Mul for &ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (la, pa) in &self.parts {
            for (lb, pb) in &rhs.parts {
                out.insert(la + lb, pa.mul(pb));
            }
        }
        out
    }
}

/// Render one monomial as a signed atom: `(negative, "coef*z^k*exp(l*z)")`.
/// Shared with the bivariate display, which passes its own variable factors.
pub(crate) fn monomial_atom(c: &ExpScalar, var_factors: &[String]) -> (bool, String) {
    let (neg, coef) = match c.unit_parts() {
        Some((mu, q)) if q.is_simple() && q.is_display_negative() => {
            (true, ExpScalar::term(-&q, mu).factor_string())
        }
        _ => (false, c.factor_string()),
    };
    let mut factors: Vec<String> = Vec::new();
    if coef != "1" || var_factors.is_empty() {
        factors.push(coef);
    }
    factors.extend(var_factors.iter().cloned());
    (neg, factors.join("*"))
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (lambda, p) in &self.parts {
            for (k, c) in p.iter() {
                if c.is_zero() {
                    continue;
                }
                let mut vars: Vec<String> = Vec::new();
                match k {
                    0 => {}
                    1 => vars.push("z".into()),
                    _ => vars.push(format!("z^{}", k)),
                }
                if !lambda.is_zero() {
                    vars.push(format!("exp({}*z)", lambda));
                }
                let (neg, body) = monomial_atom(c, &vars);
                crate::scalar::push_atom(&mut out, neg, &body);
            }
        }
        write!(f, "{}", out)
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
