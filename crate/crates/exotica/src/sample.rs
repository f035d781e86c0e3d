//! Deterministic random sampling of domain values.
//!
//! Every verifier in this crate that needs random instances draws them from a
//! [`Sampler`] seeded explicitly, so runs are reproducible bit-for-bit: the
//! same seed yields the same divisors, group elements, and reports. Values
//! are kept small (single-digit numerators, tiny denominators) so exact
//! arithmetic stays fast while still exercising nontrivial cancellations.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exppoly::{vd_basis, Divisor, ExpPoly};
use crate::groups::{GdElement, GdpElement, LieVec};
use crate::homogeneous::{GroupElement, HeisenbergElement, SpaceDescriptor, TranslationElement};
use crate::scalar::{rat, GaussRat, Rat};
use crate::surfaces::{independent_over_q, KodairaGroup, TorusLattice};

/// A seeded source of small exact values.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A rational with numerator in `-3..=3` and denominator 1 or 2.
    pub fn rat_small(&mut self) -> Rat {
        let num = self.int_in(-3, 3);
        let den = self.int_in(1, 2);
        crate::scalar::rat(num, den)
    }

    /// A small Gaussian rational (may be zero).
    pub fn gauss_small(&mut self) -> GaussRat {
        GaussRat::new(self.rat_small(), self.rat_small())
    }

    pub fn gauss_nonzero(&mut self) -> GaussRat {
        loop {
            let q = self.gauss_small();
            if !q.is_zero() {
                return q;
            }
        }
    }

    /// A unit coefficient `q E(m)` with `q != 0`.
    pub fn unit_scalar(&mut self) -> crate::scalar::ExpScalar {
        crate::scalar::ExpScalar::term(self.gauss_nonzero(), self.gauss_small())
    }

    /// A random coefficient for a basis vector: usually a plain Gaussian
    /// rational, occasionally carrying a formal exponential factor.
    fn coefficient(&mut self) -> crate::scalar::ExpScalar {
        let q = self.gauss_small();
        if self.int_in(0, 3) == 0 {
            crate::scalar::ExpScalar::term(q, self.gauss_nonzero())
        } else {
            crate::scalar::ExpScalar::from_gauss(q)
        }
    }

    /// An effective divisor with support drawn from a small fixed pool.
    pub fn divisor(&mut self, max_points: usize, max_mult: u32) -> Divisor {
        let pool = [
            GaussRat::zero(),
            GaussRat::one(),
            GaussRat::from_int(-1),
            GaussRat::unit_i(),
            GaussRat::new(crate::scalar::rat(1, 1), crate::scalar::rat(1, 1)),
            GaussRat::ratio(1, 2),
        ];
        let count = self.int_in(1, max_points as i64) as usize;
        let mut picks = Vec::new();
        let mut used = vec![false; pool.len()];
        while picks.len() < count {
            let i = self.int_in(0, pool.len() as i64 - 1) as usize;
            if !used[i] {
                used[i] = true;
                picks.push((pool[i].clone(), self.int_in(1, max_mult as i64) as u32));
            }
        }
        Divisor::from_points(picks).expect("at least one point")
    }

    /// A random element of `V_D` (may be zero).
    pub fn vd_element(&mut self, d: &Divisor) -> ExpPoly {
        let mut f = ExpPoly::zero();
        for b in vd_basis(d) {
            f = &f + &b.scale(&self.coefficient());
        }
        f
    }

    /// A random element of `V_D` vanishing at the origin.
    pub fn vd_element_vanishing(&mut self, d: &Divisor) -> ExpPoly {
        let f = self.vd_element(d);
        let value = f.eval(&GaussRat::zero());
        let first = vd_basis(d).into_iter().next().expect("divisor is nonempty");
        // the first basis vector is e^{lambda1 z}, which equals 1 at z = 0
        &f - &first.scale(&value)
    }

    pub fn gd_element(&mut self, d: &Divisor) -> GdElement {
        let f = self.vd_element(d);
        GdElement::new(d.clone(), self.gauss_small(), f).expect("sampled inside V_D")
    }

    pub fn gdp_element(&mut self, d: &Divisor) -> GdpElement {
        let f = self.vd_element(d);
        GdpElement::new(d.clone(), self.gauss_small(), self.unit_scalar(), f)
            .expect("sampled inside V_D with unit mu")
    }

    pub fn lie_vec(&mut self, d: &Divisor) -> LieVec {
        let f = self.vd_element(d);
        LieVec::new(d.clone(), self.gauss_small(), self.gauss_small(), f)
            .expect("sampled inside V_D")
    }

    /// A Lie vector in the `G_D` algebra (no `w d/dw` component).
    pub fn lie_vec_gd(&mut self, d: &Divisor) -> LieVec {
        let f = self.vd_element(d);
        LieVec::new(d.clone(), self.gauss_small(), GaussRat::zero(), f)
            .expect("sampled inside V_D")
    }

    /// A random element of the group acting on the given plane.
    pub fn group_element(&mut self, space: &SpaceDescriptor) -> GroupElement {
        match space {
            SpaceDescriptor::Translation => GroupElement::Translation(TranslationElement::new(
                self.gauss_small(),
                self.gauss_small(),
            )),
            SpaceDescriptor::Heisenberg => GroupElement::Heisenberg(HeisenbergElement::new(
                self.gauss_small(),
                self.gauss_small(),
                self.gauss_small(),
            )),
            SpaceDescriptor::Gd(d) => GroupElement::Gd(self.gd_element(d)),
            SpaceDescriptor::Gdp(d) => GroupElement::Gdp(self.gdp_element(d)),
        }
    }

    /// A random element of the stabilizer of the plane's base point `(0, 0)`.
    pub fn stabilizer_element(&mut self, space: &SpaceDescriptor) -> GroupElement {
        match space {
            // translations act freely: the stabilizer is trivial
            SpaceDescriptor::Translation => GroupElement::Translation(TranslationElement::identity()),
            // (s, t) -> (s, t + g1 s) fixes the origin
            SpaceDescriptor::Heisenberg => GroupElement::Heisenberg(HeisenbergElement::new(
                self.gauss_small(),
                GaussRat::zero(),
                GaussRat::zero(),
            )),
            SpaceDescriptor::Gd(d) => {
                let f = self.vd_element_vanishing(d);
                GroupElement::Gd(GdElement::new(d.clone(), GaussRat::zero(), f).expect("in V_D"))
            }
            SpaceDescriptor::Gdp(d) => {
                let f = self.vd_element_vanishing(d);
                GroupElement::Gdp(
                    GdpElement::new(d.clone(), GaussRat::zero(), self.unit_scalar(), f)
                        .expect("in V_D with unit mu"),
                )
            }
        }
    }

    /// A random rank-4 lattice: retry small perturbations of the standard
    /// basis until the generators are independent.
    pub fn torus_lattice(&mut self) -> TorusLattice {
        loop {
            let base = [
                (GaussRat::one(), GaussRat::zero()),
                (GaussRat::unit_i(), GaussRat::zero()),
                (GaussRat::zero(), GaussRat::one()),
                (GaussRat::zero(), GaussRat::unit_i()),
            ];
            let mut gens = base;
            for (l, m) in gens.iter_mut() {
                *l = &*l + &self.gauss_small();
                *m = &*m + &self.gauss_small();
            }
            if let Ok(lat) = TorusLattice::new(gens) {
                return lat;
            }
        }
    }

    /// A random valid Kodaira presentation: independent `(a3, b3)` and
    /// `(c2, d2)` pairs with `a1 b3 - b1 a3 = r c2` built in.
    pub fn kodaira_group(&mut self) -> KodairaGroup {
        loop {
            let a3 = self.gauss_nonzero();
            let b3 = self.gauss_nonzero();
            if !independent_over_q(&a3, &b3) {
                continue;
            }
            let a1 = self.gauss_small();
            let b1 = self.gauss_small();
            let r = self.int_in(1, 3) as u32;
            let comm = &(&a1 * &b3) - &(&b1 * &a3);
            if comm.is_zero() {
                continue;
            }
            let c2 = &comm * &GaussRat::from_rat(rat(1, r as i64));
            let d2 = self.gauss_nonzero();
            if let Ok(group) = KodairaGroup::new(a1, a3, b1, b3, c2, d2, r) {
                return group;
            }
        }
    }
}
