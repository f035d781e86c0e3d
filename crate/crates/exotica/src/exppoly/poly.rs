//! Dense univariate polynomials over `ExpScalar` (crate-internal carrier for
//! the polynomial part of each exp-polynomial frequency block).

use crate::scalar::{ExpScalar, GaussRat};

/// `coeffs[k]` multiplies `z^k`; no trailing zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub(crate) struct Poly {
    coeffs: Vec<ExpScalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: ExpScalar) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn var() -> Self {
        Poly::from_coeffs(vec![ExpScalar::zero(), ExpScalar::one()])
    }

    pub fn monomial(k: u32, c: ExpScalar) -> Self {
        let mut coeffs = vec![ExpScalar::zero(); k as usize];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(coeffs: Vec<ExpScalar>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn coeff(&self, k: u32) -> ExpScalar {
        self.coeffs.get(k as usize).cloned().unwrap_or_else(ExpScalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &ExpScalar)> {
        self.coeffs.iter().enumerate().map(|(k, c)| (k as u32, c))
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(ExpScalar::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(ExpScalar::zero);
            coeffs.push(&a + &b);
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExpScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &ExpScalar) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(z + c)` by iterated multiplication with `(z + c)` (exact Taylor shift).
    pub fn shift(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return self.clone();
        }
        let linear = Poly::from_coeffs(vec![ExpScalar::from_gauss(c.clone()), ExpScalar::one()]);
        let mut out = Poly::zero();
        let mut pow = Poly::constant(ExpScalar::one());
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                pow = pow.mul(&linear);
            }
            out = out.add(&pow.scale(a));
        }
        out
    }

    /// Coefficientwise map `a_k -> a_k * mu^k` (the polynomial part of
    /// substituting `z -> mu*z`).
    pub fn scale_arg(&self, mu: &GaussRat) -> Poly {
        let mut pow = GaussRat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                pow = &pow * mu;
            }
            coeffs.push(a.scale(&pow));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a.scale(&GaussRat::from_int(k as i64)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval(&self, z0: &GaussRat) -> ExpScalar {
        let mut acc = ExpScalar::zero();
        let z = ExpScalar::from_gauss(z0.clone());
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &z) + a;
        }
        acc
    }
}
