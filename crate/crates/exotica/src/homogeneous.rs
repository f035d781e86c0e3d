//! Homogeneous spaces, their symmetry groups, and the catalog of inducing
//! morphisms between them.
//!
//! Four model spaces appear, each a copy of `C^2` with coordinates `(s, t)`
//! and base point `(0, 0)`:
//!
//! - the translation plane, acted on by `(C^2, +)`;
//! - the Heisenberg plane, acted on by unipotent affine maps
//!   `(s, t) -> (s + g3, t + g1 s + g2)`;
//! - the `G_D` plane and the `G'_D` plane (see [`crate::groups`]).
//!
//! On the Heisenberg plane `s` is the translated coordinate and `t` the
//! sheared one; this pins down the otherwise ambiguous chart order between
//! the affine picture and the `(z, w)` picture of the `G_D` plane, and it is
//! the convention under which every equivariance identity below closes.
//!
//! An [`InducingMorphism`] pairs a group homomorphism `h` with a point map
//! `delta`, stored as two explicit [`ExpPoly2`] components so that the
//! equivariance law `delta(g . x) = h(g) . delta(x)` can be verified as a
//! symbolic identity in `(s, t)` rather than at sampled points only.
//! [`verify_inducing`] checks:
//!
//! - `h` is a homomorphism on random pairs;
//! - `h` maps the stabilizer of the base point into the stabilizer of
//!   `delta(base)`;
//! - equivariance, symbolically, for random group elements;
//! - the differential of `delta` at the base point is invertible (exact
//!   2x2 determinant).

use std::fmt;

use crate::error::Error;
use crate::exppoly::{Divisor, ExpPoly, ExpPoly2};
use crate::groups::{GdElement, GdpElement, SurfacePoint};
use crate::report::VerificationReport;
use crate::sample::Sampler;
use crate::scalar::{ExpScalar, GaussRat};

/// Which homogeneous model plane a group acts on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SpaceDescriptor {
    Translation,
    Heisenberg,
    Gd(Divisor),
    Gdp(Divisor),
}

impl SpaceDescriptor {
    pub fn divisor(&self) -> Option<&Divisor> {
        match self {
            SpaceDescriptor::Gd(d) | SpaceDescriptor::Gdp(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Translation => write!(f, "translation-plane"),
            SpaceDescriptor::Heisenberg => write!(f, "heisenberg-plane"),
            SpaceDescriptor::Gd(d) => write!(f, "gd-plane({})", d),
            SpaceDescriptor::Gdp(d) => write!(f, "gdp-plane({})", d),
        }
    }
}

impl fmt::Debug for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// An element `(lambda, mu)` of the translation group `(C^2, +)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TranslationElement {
    pub lambda: GaussRat,
    pub mu: GaussRat,
}

impl TranslationElement {
    pub fn new(lambda: GaussRat, mu: GaussRat) -> Self {
        TranslationElement { lambda, mu }
    }

    pub fn identity() -> Self {
        Self::new(GaussRat::zero(), GaussRat::zero())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.lambda + &rhs.lambda, &self.mu + &rhs.mu)
    }

    pub fn inv(&self) -> Self {
        Self::new(-&self.lambda, -&self.mu)
    }
}

impl fmt::Display for TranslationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.lambda, self.mu)
    }
}

impl fmt::Debug for TranslationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A unipotent affine map `(s, t) -> (s + g3, t + g1 s + g2)`, an element of
/// the Heisenberg-type group with product
/// `(g1, g2, g3)(h1, h2, h3) = (g1 + h1, g2 + h2 + g1 h3, g3 + h3)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    pub g1: GaussRat,
    pub g2: GaussRat,
    pub g3: GaussRat,
}

impl HeisenbergElement {
    pub fn new(g1: GaussRat, g2: GaussRat, g3: GaussRat) -> Self {
        HeisenbergElement { g1, g2, g3 }
    }

    pub fn identity() -> Self {
        Self::new(GaussRat::zero(), GaussRat::zero(), GaussRat::zero())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            &self.g1 + &rhs.g1,
            &(&self.g2 + &rhs.g2) + &(&self.g1 * &rhs.g3),
            &self.g3 + &rhs.g3,
        )
    }

    pub fn inv(&self) -> Self {
        Self::new(-&self.g1, &(&self.g1 * &self.g3) - &self.g2, -&self.g3)
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.g1, self.g2, self.g3)
    }
}

impl fmt::Debug for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// An element of whichever group acts on a given model plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Translation(TranslationElement),
    Heisenberg(HeisenbergElement),
    Gd(GdElement),
    Gdp(GdpElement),
}

impl GroupElement {
    pub fn identity(space: &SpaceDescriptor) -> Self {
        match space {
            SpaceDescriptor::Translation => GroupElement::Translation(TranslationElement::identity()),
            SpaceDescriptor::Heisenberg => GroupElement::Heisenberg(HeisenbergElement::identity()),
            SpaceDescriptor::Gd(d) => GroupElement::Gd(GdElement::identity(d.clone())),
            SpaceDescriptor::Gdp(d) => GroupElement::Gdp(GdpElement::identity(d.clone())),
        }
    }

    pub fn descriptor(&self) -> SpaceDescriptor {
        match self {
            GroupElement::Translation(_) => SpaceDescriptor::Translation,
            GroupElement::Heisenberg(_) => SpaceDescriptor::Heisenberg,
            GroupElement::Gd(g) => SpaceDescriptor::Gd(g.divisor().clone()),
            GroupElement::Gdp(g) => SpaceDescriptor::Gdp(g.divisor().clone()),
        }
    }

    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement, Error> {
        match (self, rhs) {
            (GroupElement::Translation(a), GroupElement::Translation(b)) => {
                Ok(GroupElement::Translation(a.mul(b)))
            }
            (GroupElement::Heisenberg(a), GroupElement::Heisenberg(b)) => {
                Ok(GroupElement::Heisenberg(a.mul(b)))
            }
            (GroupElement::Gd(a), GroupElement::Gd(b)) => Ok(GroupElement::Gd(a.mul(b)?)),
            (GroupElement::Gdp(a), GroupElement::Gdp(b)) => Ok(GroupElement::Gdp(a.mul(b)?)),
            _ => Err(Error::SpaceMismatch),
        }
    }

    pub fn inv(&self) -> GroupElement {
        match self {
            GroupElement::Translation(a) => GroupElement::Translation(a.inv()),
            GroupElement::Heisenberg(a) => GroupElement::Heisenberg(a.inv()),
            GroupElement::Gd(a) => GroupElement::Gd(a.inv()),
            GroupElement::Gdp(a) => GroupElement::Gdp(a.inv()),
        }
    }

    /// Act on a concrete point of the model plane.
    pub fn act_point(&self, p: &SurfacePoint) -> SurfacePoint {
        match self {
            GroupElement::Translation(a) => SurfacePoint::new(
                &p.z + &a.lambda,
                &p.w + &ExpScalar::from_gauss(a.mu.clone()),
            ),
            GroupElement::Heisenberg(a) => SurfacePoint::new(
                &p.z + &a.g3,
                &(&p.w + &(&ExpScalar::from_gauss(a.g1.clone()) * &ExpScalar::from_gauss(p.z.clone())))
                    + &ExpScalar::from_gauss(a.g2.clone()),
            ),
            GroupElement::Gd(g) => g.act(p),
            GroupElement::Gdp(g) => g.act(p),
        }
    }

    /// Precompose a symbolic pair with this element's point action: the
    /// result represents `(s, t) -> F(g . (s, t))`.
    pub fn source_act_symbolic(
        &self,
        pair: &(ExpPoly2, ExpPoly2),
    ) -> Result<(ExpPoly2, ExpPoly2), Error> {
        let sub = |w_new: &ExpPoly2, c: &GaussRat| -> Result<(ExpPoly2, ExpPoly2), Error> {
            Ok((pair.0.substitute(c, w_new)?, pair.1.substitute(c, w_new)?))
        };
        match self {
            GroupElement::Translation(a) => {
                let t_new = &ExpPoly2::var_t() + &ExpPoly2::from_gauss(a.mu.clone());
                sub(&t_new, &a.lambda)
            }
            GroupElement::Heisenberg(a) => Ok((
                pair.0.substitute_deck(&a.g1, &a.g2, &a.g3),
                pair.1.substitute_deck(&a.g1, &a.g2, &a.g3),
            )),
            GroupElement::Gd(g) => {
                // g . (s, t) = (s + t_g, t + f(s + t_g))
                let shifted = g.f().shift_arg(&-g.t());
                let t_new = &ExpPoly2::var_t() + &ExpPoly2::embed_s(&shifted);
                sub(&t_new, g.t())
            }
            GroupElement::Gdp(g) => {
                let shifted = g.f().shift_arg(&-g.t());
                let t_new = &ExpPoly2::var_t().scale(g.mu()) + &ExpPoly2::embed_s(&shifted);
                sub(&t_new, g.t())
            }
        }
    }

    /// Postcompose a symbolic pair with this element's point action: the
    /// result represents `(s, t) -> g . F(s, t)`. For `G_D` and `G'_D`
    /// elements the first component must be `s + constant` so `f(Z + t)`
    /// stays exp-polynomial.
    pub fn target_act_symbolic(
        &self,
        pair: &(ExpPoly2, ExpPoly2),
    ) -> Result<(ExpPoly2, ExpPoly2), Error> {
        let (z, w) = pair;
        match self {
            GroupElement::Translation(a) => Ok((
                z + &ExpPoly2::from_gauss(a.lambda.clone()),
                w + &ExpPoly2::from_gauss(a.mu.clone()),
            )),
            GroupElement::Heisenberg(a) => Ok((
                z + &ExpPoly2::from_gauss(a.g3.clone()),
                &(w + &z.scale(&ExpScalar::from_gauss(a.g1.clone())))
                    + &ExpPoly2::from_gauss(a.g2.clone()),
            )),
            GroupElement::Gd(g) => {
                let c = z.as_s_plus_const().ok_or(Error::UnsupportedFirstComponent)?;
                // f(Z + t) = f(s + c + t)
                let shift = -&(&c + g.t());
                let fz = ExpPoly2::embed_s(&g.f().shift_arg(&shift));
                Ok((z + &ExpPoly2::from_gauss(g.t().clone()), w + &fz))
            }
            GroupElement::Gdp(g) => {
                let c = z.as_s_plus_const().ok_or(Error::UnsupportedFirstComponent)?;
                let shift = -&(&c + g.t());
                let fz = ExpPoly2::embed_s(&g.f().shift_arg(&shift));
                Ok((
                    z + &ExpPoly2::from_gauss(g.t().clone()),
                    &w.scale(g.mu()) + &fz,
                ))
            }
        }
    }

    /// True when this element fixes the given point.
    pub fn stabilizes(&self, p: &SurfacePoint) -> bool {
        &self.act_point(p) == p
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Translation(a) => write!(f, "{}", a),
            GroupElement::Heisenberg(a) => write!(f, "{}", a),
            GroupElement::Gd(a) => write!(f, "{}", a),
            GroupElement::Gdp(a) => write!(f, "{}", a),
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Catalog tag of an inducing morphism, with its numeric parameters.
#[derive(Clone)]
pub enum MorphismKind {
    Identity,
    IncludeSubdivisor,
    IncludeGdInGdp,
    TorusZeta { k: GaussRat },
    TorusExp,
    TorusZetaPrime { a: GaussRat, k: GaussRat },
    VitterAffine { k: GaussRat },
    KodairaGd { n: u32, k: GaussRat },
    KodairaGdp { n: u32, lambda: GaussRat, k: GaussRat },
    Composite(Box<InducingMorphism>, Box<InducingMorphism>),
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismKind::Identity => write!(f, "identity"),
            MorphismKind::IncludeSubdivisor => write!(f, "include_subdivisor"),
            MorphismKind::IncludeGdInGdp => write!(f, "include_gd_in_gdp"),
            MorphismKind::TorusZeta { k } => write!(f, "torus_zeta(k={})", k),
            MorphismKind::TorusExp => write!(f, "torus_exp"),
            MorphismKind::TorusZetaPrime { a, k } => write!(f, "torus_zeta_prime(a={}, k={})", a, k),
            MorphismKind::VitterAffine { k } => write!(f, "vitter(k={})", k),
            MorphismKind::KodairaGd { n, k } => write!(f, "kodaira_gd(n={}, k={})", n, k),
            MorphismKind::KodairaGdp { n, lambda, k } => {
                write!(f, "kodaira_gdp(n={}, lambda={}, k={})", n, lambda, k)
            }
            MorphismKind::Composite(first, then) => write!(f, "{} ; {}", first.kind, then.kind),
        }
    }
}

/// A morphism of homogeneous planes: a group homomorphism `h` together with
/// the equivariant point map `delta`, stored symbolically.
#[derive(Clone)]
pub struct InducingMorphism {
    pub(crate) source: SpaceDescriptor,
    pub(crate) target: SpaceDescriptor,
    pub(crate) kind: MorphismKind,
    pub(crate) delta: (ExpPoly2, ExpPoly2),
}

fn delta_identity() -> (ExpPoly2, ExpPoly2) {
    (ExpPoly2::var_s(), ExpPoly2::var_t())
}

/// `z^n - (z - c)^n`, a polynomial of degree `n - 1`.
pub(crate) fn power_diff(n: u32, c: &GaussRat) -> ExpPoly {
    let zn = ExpPoly::monomial(GaussRat::zero(), n, ExpScalar::one());
    &zn - &zn.shift_arg(c)
}

impl InducingMorphism {
    pub fn source(&self) -> &SpaceDescriptor {
        &self.source
    }

    pub fn target(&self) -> &SpaceDescriptor {
        &self.target
    }

    pub fn kind(&self) -> &MorphismKind {
        &self.kind
    }

    pub fn delta(&self) -> &(ExpPoly2, ExpPoly2) {
        &self.delta
    }

    /// The identity morphism on any plane.
    pub fn make_identity(space: SpaceDescriptor) -> InducingMorphism {
        InducingMorphism {
            source: space.clone(),
            target: space,
            kind: MorphismKind::Identity,
            delta: delta_identity(),
        }
    }

    /// `G_D -> G_{D+}` for `D <= D+`, identity on points.
    pub fn make_include_subdivisor(d: Divisor, dplus: Divisor) -> Result<InducingMorphism, Error> {
        if !d.leq(&dplus) {
            return Err(Error::NotASubdivisor);
        }
        Ok(InducingMorphism {
            source: SpaceDescriptor::Gd(d),
            target: SpaceDescriptor::Gd(dplus),
            kind: MorphismKind::IncludeSubdivisor,
            delta: delta_identity(),
        })
    }

    /// `G'_D -> G'_{D+}` for `D <= D+`, identity on points.
    pub fn make_include_subdivisor_gdp(
        d: Divisor,
        dplus: Divisor,
    ) -> Result<InducingMorphism, Error> {
        if !d.leq(&dplus) {
            return Err(Error::NotASubdivisor);
        }
        Ok(InducingMorphism {
            source: SpaceDescriptor::Gdp(d),
            target: SpaceDescriptor::Gdp(dplus),
            kind: MorphismKind::IncludeSubdivisor,
            delta: delta_identity(),
        })
    }

    /// The canonical `G_D -> G'_D`, identity on points.
    pub fn make_include_gd_in_gdp(d: Divisor) -> InducingMorphism {
        InducingMorphism {
            source: SpaceDescriptor::Gd(d.clone()),
            target: SpaceDescriptor::Gdp(d),
            kind: MorphismKind::IncludeGdInGdp,
            delta: delta_identity(),
        }
    }

    /// Translation plane into the `G_D` plane:
    /// `h(lambda, mu) = (lambda, mu + k (z^n0 - (z - lambda)^n0))` where `n0`
    /// is the multiplicity of `0` in `D`, and `delta(s, t) = (s, t + k s^n0)`.
    pub fn make_torus_zeta(d: Divisor, k: GaussRat) -> Result<InducingMorphism, Error> {
        if !d.contains(&GaussRat::zero()) {
            return Err(Error::ZeroNotInSupport);
        }
        let n0 = d.multiplicity(&GaussRat::zero());
        let bump = ExpPoly2::monomial(
            (GaussRat::zero(), GaussRat::zero()),
            (n0, 0),
            ExpScalar::from_gauss(k.clone()),
        );
        Ok(InducingMorphism {
            source: SpaceDescriptor::Translation,
            target: SpaceDescriptor::Gd(d),
            kind: MorphismKind::TorusZeta { k },
            delta: (ExpPoly2::var_s(), &ExpPoly2::var_t() + &bump),
        })
    }

    /// Translation plane into the `G'_D` plane through the exponential:
    /// `h(lambda, mu) = (lambda, E(mu), 0)`, `delta(s, t) = (s, e^t)`.
    pub fn make_torus_exp(d: Divisor) -> InducingMorphism {
        InducingMorphism {
            source: SpaceDescriptor::Translation,
            target: SpaceDescriptor::Gdp(d),
            kind: MorphismKind::TorusExp,
            delta: (
                ExpPoly2::var_s(),
                ExpPoly2::exp_st(GaussRat::zero(), GaussRat::one()),
            ),
        }
    }

    /// Translation plane into the `G'_D` plane along a support point `a`:
    /// `h(lambda, mu) = (lambda, E(a lambda), e^{az}(mu + k (z^na - (z - lambda)^na)))`,
    /// `delta(s, t) = (s, e^{as}(t + k s^na))`.
    pub fn make_torus_zeta_prime(
        d: Divisor,
        a: GaussRat,
        k: GaussRat,
    ) -> Result<InducingMorphism, Error> {
        if !d.contains(&a) {
            return Err(Error::NotInSupport);
        }
        let na = d.multiplicity(&a);
        let bump = ExpPoly2::monomial(
            (GaussRat::zero(), GaussRat::zero()),
            (na, 0),
            ExpScalar::from_gauss(k.clone()),
        );
        let w = (&ExpPoly2::var_t() + &bump).mul_exp(&a, &GaussRat::zero());
        Ok(InducingMorphism {
            source: SpaceDescriptor::Translation,
            target: SpaceDescriptor::Gdp(d),
            kind: MorphismKind::TorusZetaPrime { a, k },
            delta: (ExpPoly2::var_s(), w),
        })
    }

    /// Heisenberg plane onto the `G_{2[0]}` plane:
    /// `h(g) = (g3, (g1 + k g3)(z - g3) + g2 + (k/2) g3^2)`,
    /// `delta(s, t) = (s, t + (k/2) s^2)`.
    pub fn make_vitter_affine(k: GaussRat) -> InducingMorphism {
        let two_zeros = Divisor::from_points([(GaussRat::zero(), 2u32)]).expect("2[0] is nonempty");
        let half_k = &k * &GaussRat::ratio(1, 2);
        let bump = ExpPoly2::monomial(
            (GaussRat::zero(), GaussRat::zero()),
            (2, 0),
            ExpScalar::from_gauss(half_k),
        );
        InducingMorphism {
            source: SpaceDescriptor::Heisenberg,
            target: SpaceDescriptor::Gd(two_zeros),
            kind: MorphismKind::VitterAffine { k },
            delta: (ExpPoly2::var_s(), &ExpPoly2::var_t() + &bump),
        }
    }

    /// `G_{2[0]} -> G_{n[0]}` for `n >= 2`:
    /// `h(t1, f1) = (t1, f1 + (k/n)(z^n - (z - t1)^n))`,
    /// `delta(s, t) = (s, t + (k/n) s^n)`. The difference of `n`-th powers
    /// has degree `n - 1`, so the image really lands in `V_{n[0]}`.
    pub fn make_kodaira_gd(n: u32, k: GaussRat) -> Result<InducingMorphism, Error> {
        if n < 2 {
            return Err(Error::BadMultiplicity);
        }
        let two_zeros = Divisor::from_points([(GaussRat::zero(), 2u32)]).expect("2[0] is nonempty");
        let n_zeros = Divisor::from_points([(GaussRat::zero(), n)]).expect("n[0] is nonempty");
        let k_over_n = &k * &GaussRat::from_int(n as i64).inv().expect("n >= 2");
        let bump = ExpPoly2::monomial(
            (GaussRat::zero(), GaussRat::zero()),
            (n, 0),
            ExpScalar::from_gauss(k_over_n),
        );
        Ok(InducingMorphism {
            source: SpaceDescriptor::Gd(two_zeros),
            target: SpaceDescriptor::Gd(n_zeros),
            kind: MorphismKind::KodairaGd { n, k },
            delta: (ExpPoly2::var_s(), &ExpPoly2::var_t() + &bump),
        })
    }

    /// `G_{2[0]} -> G'_{n[lambda]}` for `n >= 2`:
    /// `h(t1, f1) = (t1, E(lambda t1), e^{lambda z}(f1 + k (z^n - (z - t1)^n)))`,
    /// `delta(s, t) = (s, e^{lambda s}(t + k s^n))`.
    pub fn make_kodaira_gdp(n: u32, lambda: GaussRat, k: GaussRat) -> Result<InducingMorphism, Error> {
        if n < 2 {
            return Err(Error::BadMultiplicity);
        }
        let two_zeros = Divisor::from_points([(GaussRat::zero(), 2u32)]).expect("2[0] is nonempty");
        let target_div = Divisor::from_points([(lambda.clone(), n)]).expect("n[lambda] is nonempty");
        let bump = ExpPoly2::monomial(
            (GaussRat::zero(), GaussRat::zero()),
            (n, 0),
            ExpScalar::from_gauss(k.clone()),
        );
        let w = (&ExpPoly2::var_t() + &bump).mul_exp(&lambda, &GaussRat::zero());
        Ok(InducingMorphism {
            source: SpaceDescriptor::Gd(two_zeros),
            target: SpaceDescriptor::Gdp(target_div),
            kind: MorphismKind::KodairaGdp { n, lambda, k },
            delta: (ExpPoly2::var_s(), w),
        })
    }

    /// Apply the group-homomorphism half of the morphism.
    pub fn apply_h(&self, g: &GroupElement) -> Result<GroupElement, Error> {
        if g.descriptor() != self.source {
            return Err(Error::SpaceMismatch);
        }
        match (&self.kind, g) {
            (MorphismKind::Identity, g) => Ok(g.clone()),
            (MorphismKind::IncludeSubdivisor, GroupElement::Gd(e)) => {
                let dplus = self.target.divisor().ok_or(Error::SpaceMismatch)?;
                Ok(GroupElement::Gd(e.include_subdivisor(dplus)?))
            }
            (MorphismKind::IncludeSubdivisor, GroupElement::Gdp(e)) => {
                let dplus = self.target.divisor().ok_or(Error::SpaceMismatch)?;
                Ok(GroupElement::Gdp(e.include_subdivisor(dplus)?))
            }
            (MorphismKind::IncludeGdInGdp, GroupElement::Gd(e)) => {
                Ok(GroupElement::Gdp(e.to_gdp()))
            }
            (MorphismKind::TorusZeta { k }, GroupElement::Translation(e)) => {
                let d = self.target.divisor().ok_or(Error::SpaceMismatch)?;
                let n0 = d.multiplicity(&GaussRat::zero());
                let f = &ExpPoly::constant(ExpScalar::from_gauss(e.mu.clone()))
                    + &power_diff(n0, &e.lambda).scale(&ExpScalar::from_gauss(k.clone()));
                Ok(GroupElement::Gd(GdElement::new(d.clone(), e.lambda.clone(), f)?))
            }
            (MorphismKind::TorusExp, GroupElement::Translation(e)) => {
                let d = self.target.divisor().ok_or(Error::SpaceMismatch)?;
                Ok(GroupElement::Gdp(GdpElement::new(
                    d.clone(),
                    e.lambda.clone(),
                    ExpScalar::exp(e.mu.clone()),
                    ExpPoly::zero(),
                )?))
            }
            (MorphismKind::TorusZetaPrime { a, k }, GroupElement::Translation(e)) => {
                let d = self.target.divisor().ok_or(Error::SpaceMismatch)?;
                let na = d.multiplicity(a);
                let inner = &ExpPoly::constant(ExpScalar::from_gauss(e.mu.clone()))
                    + &power_diff(na, &e.lambda).scale(&ExpScalar::from_gauss(k.clone()));
                let f = inner.mul_exp(a);
                Ok(GroupElement::Gdp(GdpElement::new(
                    d.clone(),
                    e.lambda.clone(),
                    ExpScalar::exp(a * &e.lambda),
                    f,
                )?))
            }
            (MorphismKind::VitterAffine { k }, GroupElement::Heisenberg(e)) => {
                let d = self.target.divisor().ok_or(Error::SpaceMismatch)?;
                // (g1 + k g3)(z - g3) + g2 + (k/2) g3^2
                let slope = &e.g1 + &(k * &e.g3);
                let lin = (&ExpPoly::var_z() - &ExpPoly::constant(ExpScalar::from_gauss(e.g3.clone())))
                    .scale(&ExpScalar::from_gauss(slope));
                let half_k_g3sq = &(k * &GaussRat::ratio(1, 2)) * &(&e.g3 * &e.g3);
                let f = &lin + &ExpPoly::constant(ExpScalar::from_gauss(&e.g2 + &half_k_g3sq));
                Ok(GroupElement::Gd(GdElement::new(d.clone(), e.g3.clone(), f)?))
            }
            (MorphismKind::KodairaGd { n, k }, GroupElement::Gd(e)) => {
                let d = self.target.divisor().ok_or(Error::SpaceMismatch)?;
                let k_over_n = k * &GaussRat::from_int(*n as i64).inv().expect("n >= 2");
                let f = e.f() + &power_diff(*n, e.t()).scale(&ExpScalar::from_gauss(k_over_n));
                Ok(GroupElement::Gd(GdElement::new(d.clone(), e.t().clone(), f)?))
            }
            (MorphismKind::KodairaGdp { n, lambda, k }, GroupElement::Gd(e)) => {
                let d = self.target.divisor().ok_or(Error::SpaceMismatch)?;
                let inner = e.f() + &power_diff(*n, e.t()).scale(&ExpScalar::from_gauss(k.clone()));
                let f = inner.mul_exp(lambda);
                Ok(GroupElement::Gdp(GdpElement::new(
                    d.clone(),
                    e.t().clone(),
                    ExpScalar::exp(lambda * e.t()),
                    f,
                )?))
            }
            (MorphismKind::Composite(first, then), g) => then.apply_h(&first.apply_h(g)?),
            _ => Err(Error::SpaceMismatch),
        }
    }
}

impl fmt::Display for InducingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.kind, self.source, self.target)
    }
}

impl fmt::Debug for InducingMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Compose two morphisms: first `m0`, then `m1` (so `m0`'s target must be
/// `m1`'s source). The point maps compose by exact substitution.
pub fn compose_inducing(
    m0: &InducingMorphism,
    m1: &InducingMorphism,
) -> Result<InducingMorphism, Error> {
    if m0.target != m1.source {
        return Err(Error::ChainMismatch);
    }
    let c = m0
        .delta
        .0
        .as_s_plus_const()
        .ok_or(Error::UnsupportedFirstComponent)?;
    let delta = (
        m1.delta.0.substitute(&c, &m0.delta.1)?,
        m1.delta.1.substitute(&c, &m0.delta.1)?,
    );
    Ok(InducingMorphism {
        source: m0.source.clone(),
        target: m1.target.clone(),
        kind: MorphismKind::Composite(Box::new(m0.clone()), Box::new(m1.clone())),
        delta,
    })
}

/// Evaluate a symbolic pair at the base point `(0, 0)`; the first component
/// must evaluate to a plain Gaussian rational.
pub(crate) fn eval_pair_at_base(pair: &(ExpPoly2, ExpPoly2)) -> Result<SurfacePoint, Error> {
    let z = pair.0.eval(&GaussRat::zero(), &GaussRat::zero());
    let w = pair.1.eval(&GaussRat::zero(), &GaussRat::zero());
    let z = z.as_gauss().ok_or(Error::UnsupportedFirstComponent)?;
    Ok(SurfacePoint::new(z, w))
}

/// Run the full inducing-morphism verification: homomorphism property,
/// stabilizer preservation, symbolic equivariance, and invertibility of the
/// differential at the base point.
pub fn verify_inducing(m: &InducingMorphism, samples: u32, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut smp = Sampler::new(seed);

    // (a) h(g0 g1) = h(g0) h(g1)
    let mut witness: Option<String> = None;
    for _ in 0..samples {
        let g0 = smp.group_element(&m.source);
        let g1 = smp.group_element(&m.source);
        let outcome = (|| -> Result<Option<String>, Error> {
            let lhs = m.apply_h(&g0.mul(&g1)?)?;
            let rhs = m.apply_h(&g0)?.mul(&m.apply_h(&g1)?)?;
            if lhs == rhs {
                Ok(None)
            } else {
                Ok(Some(format!(
                    "g0={}, g1={}: h(g0 g1)={} but h(g0)h(g1)={}",
                    g0, g1, lhs, rhs
                )))
            }
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(w)) => {
                witness = Some(w);
                break;
            }
            Err(e) => {
                witness = Some(format!("error={}", e.name()));
                break;
            }
        }
    }
    report.record("homomorphism", witness.is_none(), || witness.clone().unwrap());

    // (b) h maps the base-point stabilizer into the stabilizer of delta(base)
    let mut witness: Option<String> = None;
    match eval_pair_at_base(&m.delta) {
        Ok(base_image) => {
            for _ in 0..samples {
                let sigma = smp.stabilizer_element(&m.source);
                match m.apply_h(&sigma) {
                    Ok(h_sigma) => {
                        if !h_sigma.stabilizes(&base_image) {
                            witness = Some(format!(
                                "sigma={}: h(sigma)={} moves {}",
                                sigma, h_sigma, base_image
                            ));
                            break;
                        }
                    }
                    Err(e) => {
                        witness = Some(format!("error={}", e.name()));
                        break;
                    }
                }
            }
        }
        Err(e) => witness = Some(format!("error={}", e.name())),
    }
    report.record("stabilizer", witness.is_none(), || witness.clone().unwrap());

    // (c) delta(g . x) = h(g) . delta(x), symbolically in (s, t)
    let mut witness: Option<String> = None;
    for _ in 0..samples {
        let g = smp.group_element(&m.source);
        let outcome = (|| -> Result<Option<String>, Error> {
            let lhs = g.source_act_symbolic(&m.delta)?;
            let hg = m.apply_h(&g)?;
            let rhs = hg.target_act_symbolic(&m.delta)?;
            if lhs == rhs {
                Ok(None)
            } else {
                Ok(Some(format!(
                    "g={}: delta(g x) = ({}, {}) but h(g) delta = ({}, {})",
                    g, lhs.0, lhs.1, rhs.0, rhs.1
                )))
            }
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(w)) => {
                witness = Some(w);
                break;
            }
            Err(e) => {
                witness = Some(format!("error={}", e.name()));
                break;
            }
        }
    }
    report.record("equivariance", witness.is_none(), || witness.clone().unwrap());

    // (d) the differential of delta at the base point is invertible
    let zero = GaussRat::zero();
    let j = [
        [
            m.delta.0.partial_s().eval(&zero, &zero),
            m.delta.0.partial_t().eval(&zero, &zero),
        ],
        [
            m.delta.1.partial_s().eval(&zero, &zero),
            m.delta.1.partial_t().eval(&zero, &zero),
        ],
    ];
    let det = &(&j[0][0] * &j[1][1]) - &(&j[0][1] * &j[1][0]);
    report.record("differential", !det.is_zero(), || {
        format!(
            "jacobian [[{}, {}], [{}, {}]] at the base point is singular",
            j[0][0], j[0][1], j[1][0], j[1][1]
        )
    });

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn div(entries: &[(i64, u32)]) -> Divisor {
        Divisor::from_points(entries.iter().map(|&(l, n)| (gi(l), n))).unwrap()
    }

    fn tr(l: i64, m: i64) -> GroupElement {
        GroupElement::Translation(TranslationElement::new(gi(l), gi(m)))
    }

    fn heis(g1: i64, g2: i64, g3: i64) -> GroupElement {
        GroupElement::Heisenberg(HeisenbergElement::new(gi(g1), gi(g2), gi(g3)))
    }

    fn s_monomial(n: u32, num: i64, den: i64) -> ExpPoly2 {
        ExpPoly2::monomial(
            (GaussRat::zero(), GaussRat::zero()),
            (n, 0),
            ExpScalar::from_gauss(GaussRat::ratio(num, den)),
        )
    }

    #[test]
    fn heisenberg_group_law() {
        let a = HeisenbergElement::new(gi(1), gi(2), gi(3));
        let b = HeisenbergElement::new(gi(4), gi(5), gi(6));
        // (1+4, 2+5+1*6, 3+6)
        assert_eq!(a.mul(&b), HeisenbergElement::new(gi(5), gi(13), gi(9)));
        assert_eq!(a.mul(&a.inv()), HeisenbergElement::identity());
        assert_eq!(a.inv().mul(&a), HeisenbergElement::identity());
        let c = HeisenbergElement::new(gi(-2), gi(0), gi(1));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn torus_zeta_on_simple_zero() {
        // D = [0]: n0 = 1, h(lambda, mu) = (lambda, mu + k lambda)
        let m = InducingMorphism::make_torus_zeta(div(&[(0, 1)]), gi(1)).unwrap();
        let h = m.apply_h(&tr(2, 3)).unwrap();
        match h {
            GroupElement::Gd(e) => {
                assert_eq!(e.t(), &gi(2));
                assert_eq!(e.f(), &ExpPoly::from_int(5));
            }
            other => panic!("expected a G_D element, got {}", other),
        }
        // delta = (s, t + s)
        assert_eq!(m.delta().0, ExpPoly2::var_s());
        assert_eq!(m.delta().1, &ExpPoly2::var_t() + &s_monomial(1, 1, 1));
    }

    #[test]
    fn torus_zeta_with_k_zero_is_plain() {
        let m = InducingMorphism::make_torus_zeta(div(&[(0, 2)]), gi(0)).unwrap();
        assert_eq!(m.delta(), &(ExpPoly2::var_s(), ExpPoly2::var_t()));
        let h = m.apply_h(&tr(5, 7)).unwrap();
        match h {
            GroupElement::Gd(e) => {
                assert_eq!(e.t(), &gi(5));
                assert_eq!(e.f(), &ExpPoly::from_int(7));
            }
            other => panic!("unexpected image {}", other),
        }
    }

    #[test]
    fn torus_zeta_requires_zero_in_support() {
        assert_eq!(
            InducingMorphism::make_torus_zeta(div(&[(1, 1)]), gi(1)).unwrap_err(),
            Error::ZeroNotInSupport
        );
    }

    #[test]
    fn torus_exp_homomorphism_examples() {
        let m = InducingMorphism::make_torus_exp(div(&[(0, 1)]));
        let id = m.apply_h(&tr(0, 0)).unwrap();
        assert_eq!(id, GroupElement::identity(m.target()));
        let lhs = m.apply_h(&tr(1, 2)).unwrap().mul(&m.apply_h(&tr(3, 4)).unwrap()).unwrap();
        assert_eq!(lhs, m.apply_h(&tr(4, 6)).unwrap());
        // the base point maps to (0, 1)
        let base = eval_pair_at_base(m.delta()).unwrap();
        assert_eq!(base.z, gi(0));
        assert_eq!(base.w, ExpScalar::one());
    }

    #[test]
    fn torus_zeta_prime_at_zero_matches_zeta() {
        let d = div(&[(0, 2), (1, 1)]);
        let zp = InducingMorphism::make_torus_zeta_prime(d.clone(), gi(0), gi(3)).unwrap();
        let z = InducingMorphism::make_torus_zeta(d.clone(), gi(3)).unwrap();
        let inc = InducingMorphism::make_include_gd_in_gdp(d);
        assert_eq!(zp.delta(), z.delta());
        for g in [tr(1, 2), tr(-1, 0), tr(2, -3)] {
            let through_zeta = inc.apply_h(&z.apply_h(&g).unwrap()).unwrap();
            assert_eq!(zp.apply_h(&g).unwrap(), through_zeta);
        }
    }

    #[test]
    fn torus_zeta_prime_example_on_simple_support() {
        // D = [1], a = 1, k = 0: h(lambda, mu) = (lambda, E(lambda), mu e^z)
        let m = InducingMorphism::make_torus_zeta_prime(div(&[(1, 1)]), gi(1), gi(0)).unwrap();
        match m.apply_h(&tr(2, 3)).unwrap() {
            GroupElement::Gdp(e) => {
                assert_eq!(e.t(), &gi(2));
                assert_eq!(e.mu(), &ExpScalar::exp(gi(2)));
                assert_eq!(e.f(), &ExpPoly::exp_z(gi(1)).scale(&ExpScalar::from_int(3)));
            }
            other => panic!("unexpected image {}", other),
        }
        assert_eq!(
            InducingMorphism::make_torus_zeta_prime(div(&[(1, 1)]), gi(2), gi(0)).unwrap_err(),
            Error::NotInSupport
        );
    }

    #[test]
    fn vitter_h_examples() {
        // k = 0: h(1, 2, 3) = (3, 1*(z - 3) + 2) = (3, z - 1)
        let m0 = InducingMorphism::make_vitter_affine(gi(0));
        match m0.apply_h(&heis(1, 2, 3)).unwrap() {
            GroupElement::Gd(e) => {
                assert_eq!(e.t(), &gi(3));
                assert_eq!(e.f(), &(&ExpPoly::var_z() - &ExpPoly::from_int(1)));
            }
            other => panic!("unexpected image {}", other),
        }
        // k = 1: h(1, 2, 3) = (3, 4(z - 3) + 2 + 9/2) = (3, 4z - 11/2)
        let m1 = InducingMorphism::make_vitter_affine(gi(1));
        match m1.apply_h(&heis(1, 2, 3)).unwrap() {
            GroupElement::Gd(e) => {
                let expect = &ExpPoly::var_z().scale(&ExpScalar::from_int(4))
                    - &ExpPoly::constant(ExpScalar::from_gauss(GaussRat::ratio(11, 2)));
                assert_eq!(e.f(), &expect);
            }
            other => panic!("unexpected image {}", other),
        }
    }

    #[test]
    fn kodaira_gd_expansion_for_n_two() {
        // n = 2, k = 3: h(2, z) = (2, z + (3/2)(z^2 - (z-2)^2)) = (2, 7z - 6)
        let m = InducingMorphism::make_kodaira_gd(2, gi(3)).unwrap();
        let two_zeros = div(&[(0, 2)]);
        let g = GroupElement::Gd(GdElement::new(two_zeros, gi(2), ExpPoly::var_z()).unwrap());
        match m.apply_h(&g).unwrap() {
            GroupElement::Gd(e) => {
                let expect = &ExpPoly::var_z().scale(&ExpScalar::from_int(7)) - &ExpPoly::from_int(6);
                assert_eq!(e.f(), &expect);
            }
            other => panic!("unexpected image {}", other),
        }
    }

    #[test]
    fn kodaira_constructors_reject_small_n() {
        assert_eq!(InducingMorphism::make_kodaira_gd(1, gi(1)).unwrap_err(), Error::BadMultiplicity);
        assert_eq!(InducingMorphism::make_kodaira_gd(0, gi(1)).unwrap_err(), Error::BadMultiplicity);
        assert_eq!(
            InducingMorphism::make_kodaira_gdp(1, gi(0), gi(1)).unwrap_err(),
            Error::BadMultiplicity
        );
    }

    #[test]
    fn kodaira_gdp_reduces_at_lambda_zero() {
        // kodaira_gdp(n, 0, k) matches kodaira_gd(n, n*k) followed by the
        // canonical embedding
        let gdp = InducingMorphism::make_kodaira_gdp(3, gi(0), gi(2)).unwrap();
        let gd = InducingMorphism::make_kodaira_gd(3, gi(6)).unwrap();
        assert_eq!(gdp.delta(), gd.delta());
        let mut smp = Sampler::new(11);
        let two_zeros = div(&[(0, 2)]);
        for _ in 0..5 {
            let g = GroupElement::Gd(smp.gd_element(&two_zeros));
            let lhs = gdp.apply_h(&g).unwrap();
            let rhs = match gd.apply_h(&g).unwrap() {
                GroupElement::Gd(e) => GroupElement::Gdp(e.to_gdp()),
                other => panic!("unexpected image {}", other),
            };
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kodaira_gdp_stabilizer_image_vanishes_at_origin() {
        // (0, g1 z) maps to (0, 1, e^{lambda z} g1 z), which fixes the origin
        let m = InducingMorphism::make_kodaira_gdp(2, gi(1), gi(5)).unwrap();
        let two_zeros = div(&[(0, 2)]);
        let g = GroupElement::Gd(
            GdElement::new(two_zeros, gi(0), ExpPoly::var_z().scale(&ExpScalar::from_int(2))).unwrap(),
        );
        match m.apply_h(&g).unwrap() {
            GroupElement::Gdp(e) => {
                assert!(e.mu().is_one());
                let expect = ExpPoly::var_z().scale(&ExpScalar::from_int(2)).mul_exp(&gi(1));
                assert_eq!(e.f(), &expect);
                assert!(e.stabilizes_origin());
            }
            other => panic!("unexpected image {}", other),
        }
    }

    #[test]
    fn whole_catalog_passes_verification() {
        let morphisms: Vec<InducingMorphism> = vec![
            InducingMorphism::make_identity(SpaceDescriptor::Translation),
            InducingMorphism::make_identity(SpaceDescriptor::Gd(div(&[(0, 2)]))),
            InducingMorphism::make_identity(SpaceDescriptor::Gdp(div(&[(1, 1)]))),
            InducingMorphism::make_include_subdivisor(div(&[(0, 1)]), div(&[(0, 2), (1, 1)])).unwrap(),
            InducingMorphism::make_include_subdivisor_gdp(div(&[(0, 1)]), div(&[(0, 3)])).unwrap(),
            InducingMorphism::make_include_gd_in_gdp(div(&[(0, 2), (-1, 1)])),
            InducingMorphism::make_torus_zeta(div(&[(0, 2)]), GaussRat::ratio(3, 2)).unwrap(),
            InducingMorphism::make_torus_zeta(div(&[(0, 1)]), gi(1)).unwrap(),
            InducingMorphism::make_torus_exp(div(&[(1, 1)])),
            InducingMorphism::make_torus_exp(div(&[(0, 2), (1, 1)])),
            InducingMorphism::make_torus_zeta_prime(div(&[(1, 2), (0, 1)]), gi(1), gi(2)).unwrap(),
            InducingMorphism::make_torus_zeta_prime(div(&[(0, 1)]), gi(0), gi(0)).unwrap(),
            InducingMorphism::make_vitter_affine(gi(0)),
            InducingMorphism::make_vitter_affine(gi(1)),
            InducingMorphism::make_vitter_affine(GaussRat::ratio(-1, 2)),
            InducingMorphism::make_kodaira_gd(2, gi(3)).unwrap(),
            InducingMorphism::make_kodaira_gd(4, GaussRat::ratio(1, 2)).unwrap(),
            InducingMorphism::make_kodaira_gdp(2, GaussRat::unit_i(), gi(1)).unwrap(),
            InducingMorphism::make_kodaira_gdp(3, gi(1), GaussRat::ratio(-2, 3)).unwrap(),
        ];
        for m in &morphisms {
            let report = verify_inducing(m, 6, 42);
            assert!(report.all_passed(), "{} failed:\n{}", m, report);
        }
    }

    #[test]
    fn kodaira_gd_image_lands_in_bigger_space() {
        let m = InducingMorphism::make_kodaira_gd(4, gi(7)).unwrap();
        let two_zeros = div(&[(0, 2)]);
        let four_zeros = div(&[(0, 4)]);
        let mut smp = Sampler::new(5);
        for _ in 0..10 {
            let g = smp.gd_element(&two_zeros);
            match m.apply_h(&GroupElement::Gd(g)).unwrap() {
                GroupElement::Gd(e) => assert!(e.f().in_vd(&four_zeros)),
                other => panic!("unexpected image {}", other),
            }
        }
    }

    #[test]
    fn composite_kodaira_chain_verifies() {
        let vitter = InducingMorphism::make_vitter_affine(gi(0));
        let deform = InducingMorphism::make_kodaira_gd(3, gi(2)).unwrap();
        let include = InducingMorphism::make_include_subdivisor(div(&[(0, 3)]), div(&[(0, 3), (1, 1)])).unwrap();
        let chain = compose_inducing(&compose_inducing(&vitter, &deform).unwrap(), &include).unwrap();
        assert_eq!(chain.source(), &SpaceDescriptor::Heisenberg);
        assert_eq!(chain.target(), &SpaceDescriptor::Gd(div(&[(0, 3), (1, 1)])));
        // delta = (s, t + (2/3) s^3)
        assert_eq!(chain.delta().1, &ExpPoly2::var_t() + &s_monomial(3, 2, 3));
        let report = verify_inducing(&chain, 6, 9);
        assert!(report.all_passed(), "chain failed:\n{}", report);
    }

    #[test]
    fn compose_is_associative_on_the_chain() {
        let vitter = InducingMorphism::make_vitter_affine(gi(1));
        let deform = InducingMorphism::make_kodaira_gd(3, gi(2)).unwrap();
        let include = InducingMorphism::make_include_subdivisor(div(&[(0, 3)]), div(&[(0, 4)])).unwrap();
        let left = compose_inducing(&compose_inducing(&vitter, &deform).unwrap(), &include).unwrap();
        let right = compose_inducing(&vitter, &compose_inducing(&deform, &include).unwrap()).unwrap();
        assert_eq!(left.delta(), right.delta());
        let mut smp = Sampler::new(2);
        for _ in 0..8 {
            let g = smp.group_element(&SpaceDescriptor::Heisenberg);
            assert_eq!(left.apply_h(&g).unwrap(), right.apply_h(&g).unwrap());
        }
    }

    #[test]
    fn compose_with_identity_is_unchanged() {
        let m = InducingMorphism::make_torus_zeta(div(&[(0, 2)]), gi(3)).unwrap();
        let pre = compose_inducing(&InducingMorphism::make_identity(SpaceDescriptor::Translation), &m).unwrap();
        let post = compose_inducing(&m, &InducingMorphism::make_identity(m.target().clone())).unwrap();
        assert_eq!(pre.delta(), m.delta());
        assert_eq!(post.delta(), m.delta());
        for g in [tr(1, 2), tr(-2, 5)] {
            assert_eq!(pre.apply_h(&g).unwrap(), m.apply_h(&g).unwrap());
            assert_eq!(post.apply_h(&g).unwrap(), m.apply_h(&g).unwrap());
        }
    }

    #[test]
    fn compose_rejects_mismatched_chain() {
        let zeta = InducingMorphism::make_torus_zeta(div(&[(0, 2)]), gi(1)).unwrap();
        let vitter = InducingMorphism::make_vitter_affine(gi(0));
        assert_eq!(compose_inducing(&zeta, &vitter).unwrap_err(), Error::ChainMismatch);
    }

    #[test]
    fn corrupted_zeta_fails_equivariance_with_witness() {
        let good = InducingMorphism::make_torus_zeta(div(&[(0, 2)]), gi(1)).unwrap();
        let other = InducingMorphism::make_torus_zeta(div(&[(0, 2)]), gi(2)).unwrap();
        let corrupted = InducingMorphism { delta: other.delta.clone(), ..good.clone() };
        let report = verify_inducing(&corrupted, 6, 4);
        assert!(!report.all_passed());
        let eq = report
            .checks()
            .iter()
            .find(|c| c.name == "equivariance")
            .expect("equivariance check present");
        assert!(!eq.passed);
        assert!(eq.witness.as_deref().is_some_and(|w| !w.is_empty()));
    }

    #[test]
    fn zeta_deltas_compose_additively_in_k() {
        for n in [1u32, 2, 3] {
            let d = div(&[(0, n)]);
            let a = InducingMorphism::make_torus_zeta(d.clone(), gi(2)).unwrap();
            let b = InducingMorphism::make_torus_zeta(d.clone(), gi(5)).unwrap();
            let sum = InducingMorphism::make_torus_zeta(d, gi(7)).unwrap();
            let composed = a.delta().1.substitute(&gi(0), &b.delta().1).unwrap();
            assert_eq!(composed, sum.delta().1);
        }
    }

    #[test]
    fn kodaira_power_difference_drops_leading_term() {
        // z^n - (z - t)^n has z-degree n - 1, symbolically in both variables
        for n in 2u32..=8 {
            let diff = &ExpPoly2::var_s().pow_u(n) - &(&ExpPoly2::var_s() - &ExpPoly2::var_t()).pow_u(n);
            for (freq, poly) in diff.parts() {
                assert_eq!(freq, &(GaussRat::zero(), GaussRat::zero()));
                for ((i, _), _) in poly.terms() {
                    assert!(*i <= n - 1, "n={}: found s^{}", n, i);
                }
            }
        }
    }

    #[test]
    fn symbolic_actions_respect_composition() {
        // both the pre- and post-composition actions are compatible with the
        // group product
        let d = div(&[(0, 2), (1, 1)]);
        let mut smp = Sampler::new(21);
        let pair = (
            ExpPoly2::var_s(),
            &ExpPoly2::var_t() + &s_monomial(2, 1, 1),
        );
        for space in [
            SpaceDescriptor::Translation,
            SpaceDescriptor::Heisenberg,
            SpaceDescriptor::Gd(d.clone()),
            SpaceDescriptor::Gdp(d.clone()),
        ] {
            for _ in 0..4 {
                let g0 = smp.group_element(&space);
                let g1 = smp.group_element(&space);
                let prod = g0.mul(&g1).unwrap();
                // source action is contravariant: (g0 g1) acts as g1 after g0
                let step = g0.source_act_symbolic(&pair).unwrap();
                let lhs = g1.source_act_symbolic(&step).unwrap();
                let rhs = prod.source_act_symbolic(&pair).unwrap();
                assert_eq!(lhs, rhs, "source action in {}", space);
                // target action is covariant
                let step = g1.target_act_symbolic(&pair).unwrap();
                let lhs = g0.target_act_symbolic(&step).unwrap();
                let rhs = prod.target_act_symbolic(&pair).unwrap();
                assert_eq!(lhs, rhs, "target action in {}", space);
            }
        }
    }
}
