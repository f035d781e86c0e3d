//! The groups `G_D` and `G'_D` acting on the model surface `C^2`.
//!
//! For a divisor `D`, `G_D` is the set of pairs `(t, f)` with `t` a Gaussian
//! rational and `f` in `V_D`, with product
//!
//! ```text
//! (t0, f0) (t1, f1) = (t0 + t1, f0(z) + f1(z - t0))
//! ```
//!
//! acting on points by `(t, f) . (z, w) = (z + t, w + f(z + t))`. `G'_D`
//! extends this by a unit scalar `mu`:
//!
//! ```text
//! (t0, mu0, f0) (t1, mu1, f1) = (t0 + t1, mu0 mu1, f0(z) + mu0 f1(z - t0))
//! (t, mu, f) . (z, w) = (z + t, mu w + f(z + t))
//! ```
//!
//! Tangent vectors are spanned by `d/dz`, `w d/dw` (absent in the `G_D`
//! algebra) and `f(z) d/dw` for `f` in `V_D`; the bracket and the adjoint
//! representations are implemented in closed form.
//!
//! Point separation (`moves_some_probe`) uses the probe set
//! `{(1,0), ..., (deg D + 1, 0), (0, 1)}`: a nonzero `f` in `V_D` cannot
//! vanish at `deg D + 1` distinct nonzero rational points (per frequency
//! block the formal units `E(lambda z0)` for a fixed `z0 != 0` are
//! independent, so vanishing forces polynomial zeros), hence the finite
//! probe check is exact, not a sampling approximation.

use std::fmt;

use crate::error::Error;
use crate::exppoly::{Divisor, ExpPoly};
use crate::scalar::{ExpScalar, GaussRat};

/// A point `(z, w)` of the model surface; `w` may carry formal exponentials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SurfacePoint {
    pub z: GaussRat,
    pub w: ExpScalar,
}

impl SurfacePoint {
    pub fn new(z: GaussRat, w: ExpScalar) -> Self {
        SurfacePoint { z, w }
    }

    pub fn origin() -> Self {
        SurfacePoint::new(GaussRat::zero(), ExpScalar::zero())
    }
}

impl fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z, self.w)
    }
}

impl fmt::Debug for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// An element `(t, f)` of `G_D`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GdElement {
    divisor: Divisor,
    t: GaussRat,
    f: ExpPoly,
}

impl GdElement {
    pub fn new(divisor: Divisor, t: GaussRat, f: ExpPoly) -> Result<Self, Error> {
        if !f.in_vd(&divisor) {
            return Err(Error::NotInVd);
        }
        Ok(GdElement { divisor, t, f })
    }

    pub fn identity(divisor: Divisor) -> Self {
        GdElement { divisor, t: GaussRat::zero(), f: ExpPoly::zero() }
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn t(&self) -> &GaussRat {
        &self.t
    }

    pub fn f(&self) -> &ExpPoly {
        &self.f
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_zero() && self.f.is_zero()
    }

    /// Stabilizer of the origin: `t = 0` and `f(0) = 0`.
    pub fn stabilizes_origin(&self) -> bool {
        self.t.is_zero() && self.f.eval(&GaussRat::zero()).is_zero()
    }

    pub fn mul(&self, rhs: &GdElement) -> Result<GdElement, Error> {
        if self.divisor != rhs.divisor {
            return Err(Error::DivisorMismatch);
        }
        Ok(GdElement {
            divisor: self.divisor.clone(),
            t: &self.t + &rhs.t,
            f: &self.f + &rhs.f.shift_arg(&self.t),
        })
    }

    pub fn inv(&self) -> GdElement {
        // (t, f)^-1 = (-t, -f(z + t))
        GdElement {
            divisor: self.divisor.clone(),
            t: -&self.t,
            f: -&self.f.shift_arg(&-&self.t),
        }
    }

    pub fn pow(&self, n: u32) -> GdElement {
        let mut out = GdElement::identity(self.divisor.clone());
        for _ in 0..n {
            out = out.mul(self).expect("same divisor");
        }
        out
    }

    pub fn act(&self, p: &SurfacePoint) -> SurfacePoint {
        let z1 = &p.z + &self.t;
        SurfacePoint { w: &p.w + &self.f.eval(&z1), z: z1 }
    }

    /// The same element seen inside a larger group `G_{D+}` (pointwise
    /// domination required).
    pub fn include_subdivisor(&self, bigger: &Divisor) -> Result<GdElement, Error> {
        if !self.divisor.leq(bigger) {
            return Err(Error::NotASubdivisor);
        }
        Ok(GdElement { divisor: bigger.clone(), t: self.t.clone(), f: self.f.clone() })
    }

    /// The canonical copy of `G_D` inside `G'_D` (unit scalar 1).
    pub fn to_gdp(&self) -> GdpElement {
        GdpElement {
            divisor: self.divisor.clone(),
            t: self.t.clone(),
            mu: ExpScalar::one(),
            f: self.f.clone(),
        }
    }

    /// The rescaling isomorphism `G_D -> G_{D'}` for `D' = mu . D`:
    /// `(t, f) -> (t / mu, f(mu z))`.
    pub fn rescale(&self, mu: &GaussRat) -> Result<GdElement, Error> {
        let inv = mu.inv().ok_or(Error::ZeroScale)?;
        Ok(GdElement {
            divisor: self.divisor.rescale(mu)?,
            t: &self.t * &inv,
            f: self.f.scale_arg(mu)?,
        })
    }

    /// Jacobian of the point action at `p`, rows `(dz', dw')` against
    /// columns `(dz, dw)`. The first row is always `(1, 0)`.
    pub fn jacobian(&self, p: &SurfacePoint) -> [[ExpScalar; 2]; 2] {
        let z1 = &p.z + &self.t;
        [
            [ExpScalar::one(), ExpScalar::zero()],
            [self.f.diff().eval(&z1), ExpScalar::one()],
        ]
    }

    /// Adjoint action on the Lie algebra: `d/dz` gains `f'(z) d/dw`, while
    /// `g(z) d/dw` becomes `g(z - t) d/dw`. Only defined for vectors without
    /// a `w d/dw` component.
    pub fn adjoint(&self, x: &LieVec) -> Result<LieVec, Error> {
        if self.divisor != x.divisor {
            return Err(Error::DivisorMismatch);
        }
        if !x.cw.is_zero() {
            return Err(Error::NotInSubalgebra);
        }
        let f_part = &x.f.shift_arg(&self.t)
            + &self.f.diff().scale(&ExpScalar::from_gauss(x.cz.clone()));
        Ok(LieVec {
            divisor: self.divisor.clone(),
            cz: x.cz.clone(),
            cw: GaussRat::zero(),
            f: f_part,
        })
    }
}

impl fmt::Display for GdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.t, self.f)
    }
}

impl fmt::Debug for GdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// An element `(t, mu, f)` of `G'_D`; `mu` is a unit scalar `q*E(m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GdpElement {
    divisor: Divisor,
    t: GaussRat,
    mu: ExpScalar,
    f: ExpPoly,
}

impl GdpElement {
    pub fn new(divisor: Divisor, t: GaussRat, mu: ExpScalar, f: ExpPoly) -> Result<Self, Error> {
        if !mu.is_unit() {
            return Err(Error::NotAUnit);
        }
        if !f.in_vd(&divisor) {
            return Err(Error::NotInVd);
        }
        Ok(GdpElement { divisor, t, mu, f })
    }

    pub fn identity(divisor: Divisor) -> Self {
        GdpElement {
            divisor,
            t: GaussRat::zero(),
            mu: ExpScalar::one(),
            f: ExpPoly::zero(),
        }
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn t(&self) -> &GaussRat {
        &self.t
    }

    pub fn mu(&self) -> &ExpScalar {
        &self.mu
    }

    pub fn f(&self) -> &ExpPoly {
        &self.f
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_zero() && self.mu.is_one() && self.f.is_zero()
    }

    /// Stabilizer of the origin: `t = 0` and `f(0) = 0` (`mu` free).
    pub fn stabilizes_origin(&self) -> bool {
        self.t.is_zero() && self.f.eval(&GaussRat::zero()).is_zero()
    }

    pub fn mul(&self, rhs: &GdpElement) -> Result<GdpElement, Error> {
        if self.divisor != rhs.divisor {
            return Err(Error::DivisorMismatch);
        }
        Ok(GdpElement {
            divisor: self.divisor.clone(),
            t: &self.t + &rhs.t,
            mu: &self.mu * &rhs.mu,
            f: &self.f + &rhs.f.shift_arg(&self.t).scale(&self.mu),
        })
    }

    pub fn inv(&self) -> GdpElement {
        // (t, mu, f)^-1 = (-t, mu^-1, -mu^-1 f(z + t))
        let mu_inv = self.mu.invert().expect("construction keeps mu a unit");
        GdpElement {
            divisor: self.divisor.clone(),
            t: -&self.t,
            f: -&self.f.shift_arg(&-&self.t).scale(&mu_inv),
            mu: mu_inv,
        }
    }

    pub fn pow(&self, n: u32) -> GdpElement {
        let mut out = GdpElement::identity(self.divisor.clone());
        for _ in 0..n {
            out = out.mul(self).expect("same divisor");
        }
        out
    }

    pub fn act(&self, p: &SurfacePoint) -> SurfacePoint {
        let z1 = &p.z + &self.t;
        SurfacePoint { w: &(&self.mu * &p.w) + &self.f.eval(&z1), z: z1 }
    }

    pub fn include_subdivisor(&self, bigger: &Divisor) -> Result<GdpElement, Error> {
        if !self.divisor.leq(bigger) {
            return Err(Error::NotASubdivisor);
        }
        Ok(GdpElement {
            divisor: bigger.clone(),
            t: self.t.clone(),
            mu: self.mu.clone(),
            f: self.f.clone(),
        })
    }

    pub fn jacobian(&self, p: &SurfacePoint) -> [[ExpScalar; 2]; 2] {
        let z1 = &p.z + &self.t;
        [
            [ExpScalar::one(), ExpScalar::zero()],
            [self.f.diff().eval(&z1), self.mu.clone()],
        ]
    }

    /// Adjoint action: `d/dz` gains `f'(z) d/dw`, `w d/dw` loses `f(z) d/dw`,
    /// and `g(z) d/dw` becomes `mu g(z - t) d/dw`.
    pub fn adjoint(&self, x: &LieVec) -> Result<LieVec, Error> {
        if self.divisor != x.divisor {
            return Err(Error::DivisorMismatch);
        }
        let mut f_part = x.f.shift_arg(&self.t).scale(&self.mu);
        if !x.cz.is_zero() {
            f_part = &f_part + &self.f.diff().scale(&ExpScalar::from_gauss(x.cz.clone()));
        }
        if !x.cw.is_zero() {
            f_part = &f_part - &self.f.scale(&ExpScalar::from_gauss(x.cw.clone()));
        }
        Ok(LieVec {
            divisor: self.divisor.clone(),
            cz: x.cz.clone(),
            cw: x.cw.clone(),
            f: f_part,
        })
    }
}

impl fmt::Display for GdpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.t, self.mu, self.f)
    }
}

impl fmt::Debug for GdpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A tangent vector `cz d/dz + cw (w d/dw) + f(z) d/dw` with `f` in `V_D`.
/// Vectors with `cw = 0` span the `G_D` algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieVec {
    divisor: Divisor,
    cz: GaussRat,
    cw: GaussRat,
    f: ExpPoly,
}

impl LieVec {
    pub fn new(divisor: Divisor, cz: GaussRat, cw: GaussRat, f: ExpPoly) -> Result<Self, Error> {
        if !f.in_vd(&divisor) {
            return Err(Error::NotInVd);
        }
        Ok(LieVec { divisor, cz, cw, f })
    }

    pub fn d_z(divisor: Divisor) -> Self {
        LieVec { divisor, cz: GaussRat::one(), cw: GaussRat::zero(), f: ExpPoly::zero() }
    }

    pub fn w_d_w(divisor: Divisor) -> Self {
        LieVec { divisor, cz: GaussRat::zero(), cw: GaussRat::one(), f: ExpPoly::zero() }
    }

    pub fn f_d_w(divisor: Divisor, f: ExpPoly) -> Result<Self, Error> {
        Self::new(divisor, GaussRat::zero(), GaussRat::zero(), f)
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn cz(&self) -> &GaussRat {
        &self.cz
    }

    pub fn cw(&self) -> &GaussRat {
        &self.cw
    }

    pub fn f(&self) -> &ExpPoly {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.cz.is_zero() && self.cw.is_zero() && self.f.is_zero()
    }

    pub fn add(&self, rhs: &LieVec) -> Result<LieVec, Error> {
        if self.divisor != rhs.divisor {
            return Err(Error::DivisorMismatch);
        }
        Ok(LieVec {
            divisor: self.divisor.clone(),
            cz: &self.cz + &rhs.cz,
            cw: &self.cw + &rhs.cw,
            f: &self.f + &rhs.f,
        })
    }

    pub fn scale(&self, c: &GaussRat) -> LieVec {
        LieVec {
            divisor: self.divisor.clone(),
            cz: &self.cz * c,
            cw: &self.cw * c,
            f: self.f.scale(&ExpScalar::from_gauss(c.clone())),
        }
    }

    /// The Lie bracket. The span of `d/dz, w d/dw, f d/dw` closes under
    ///
    /// ```text
    /// [d/dz, f d/dw] = f' d/dw      [w d/dw, f d/dw] = -f d/dw
    /// [d/dz, w d/dw] = 0            [f d/dw, g d/dw] = 0
    /// ```
    pub fn bracket(&self, rhs: &LieVec) -> Result<LieVec, Error> {
        if self.divisor != rhs.divisor {
            return Err(Error::DivisorMismatch);
        }
        let mut f = &self.rhsf_scaled(&self.cz, &rhs.f.diff()) - &self.rhsf_scaled(&rhs.cz, &self.f.diff());
        f = &f - &self.rhsf_scaled(&self.cw, &rhs.f);
        f = &f + &self.rhsf_scaled(&rhs.cw, &self.f);
        Ok(LieVec {
            divisor: self.divisor.clone(),
            cz: GaussRat::zero(),
            cw: GaussRat::zero(),
            f,
        })
    }

    fn rhsf_scaled(&self, c: &GaussRat, f: &ExpPoly) -> ExpPoly {
        if c.is_zero() {
            ExpPoly::zero()
        } else {
            f.scale(&ExpScalar::from_gauss(c.clone()))
        }
    }
}

impl fmt::Display for LieVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.cz, self.cw, self.f)
    }
}

impl fmt::Debug for LieVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The exact probe set for point separation over `V_D`.
pub fn probe_points(d: &Divisor) -> Vec<SurfacePoint> {
    let mut probes: Vec<SurfacePoint> = (1..=d.degree() as i64 + 1)
        .map(|j| SurfacePoint::new(GaussRat::from_int(j), ExpScalar::zero()))
        .collect();
    probes.push(SurfacePoint::new(GaussRat::zero(), ExpScalar::one()));
    probes
}

/// True when `g` moves at least one probe point; for non-identity `g` this is
/// guaranteed (see the module docs), so it doubles as an exact faithfulness
/// witness.
pub fn gd_moves_some_probe(g: &GdElement) -> bool {
    probe_points(g.divisor()).iter().any(|p| &g.act(p) != p)
}

pub fn gdp_moves_some_probe(g: &GdpElement) -> bool {
    probe_points(g.divisor()).iter().any(|p| &g.act(p) != p)
}
