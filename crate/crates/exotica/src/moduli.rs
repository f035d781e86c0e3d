//! Moduli of the catalog structures on a fixed surface.
//!
//! For a divisor `D` the deformations of each catalog structure are governed
//! by the cokernel of a twisted derivative on `V_D`:
//!
//! - `quotient_dim(D, a)` is the dimension of `V_D / (d/dz - a) V_D`, which
//!   is `1` when `a` lies in the support of `D` and `0` otherwise;
//! - `coset_representative(D, a)` returns the canonical spanning element
//!   `z^{n_a - 1} e^{a z}` of that cokernel.
//!
//! The moduli of structures on a torus then assemble into a finite union of
//! points and affine lines, one line per support point that admits a
//! deformation parameter, described by [`ModuliDescription`].

use std::fmt;

use crate::error::Error;
use crate::exppoly::{vd_basis, Divisor, ExpPoly};
use crate::linalg::Matrix;
use crate::scalar::{ExpScalar, GaussRat};

/// The matrix of `f -> f' - a f` on `V_D` in the monomial basis.
fn twisted_derivative_matrix(d: &Divisor, a: &GaussRat) -> Matrix {
    let basis = vd_basis(d);
    let index: std::collections::BTreeMap<(GaussRat, u32), usize> = basis
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let monos = f.monomials();
            assert_eq!(monos.len(), 1, "the standard basis is monomial");
            let (lambda, k, _) = monos.into_iter().next().expect("length checked");
            ((lambda, k), j)
        })
        .collect();
    let n = basis.len();
    let mut m = Matrix::zero(n, n);
    for (j, f) in basis.iter().enumerate() {
        let image = &f.diff() - &f.scale(&ExpScalar::from_gauss(a.clone()));
        for (lambda, k, coeff) in image.monomials() {
            let i = index[&(lambda, k)];
            let q = coeff
                .as_gauss()
                .expect("derivatives of monomial basis elements have scalar coefficients");
            m.set(i, j, q);
        }
    }
    m
}

/// Dimension of `V_D / (d/dz - a) V_D`.
pub fn quotient_dim(d: &Divisor, a: &GaussRat) -> u32 {
    let m = twisted_derivative_matrix(d, a);
    d.degree() - m.rank() as u32
}

/// The canonical cokernel generator `z^{n_a - 1} e^{a z}`; requires `a` in
/// the support of `D`.
pub fn coset_representative(d: &Divisor, a: &GaussRat) -> Result<ExpPoly, Error> {
    let na = d.multiplicity(a);
    if na == 0 {
        return Err(Error::NotInSupport);
    }
    Ok(ExpPoly::monomial(
        a.clone(),
        na - 1,
        ExpScalar::one(),
    ))
}

/// A finite list of moduli components: at most one isolated point and one
/// affine line per marked support point.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuliDescription {
    has_point: bool,
    lines: Vec<GaussRat>,
}

impl ModuliDescription {
    pub fn empty() -> Self {
        ModuliDescription { has_point: false, lines: Vec::new() }
    }

    pub fn has_point(&self) -> bool {
        self.has_point
    }

    /// Support points carrying a one-parameter family, in canonical order.
    pub fn lines(&self) -> &[GaussRat] {
        &self.lines
    }

    /// Total number of components.
    pub fn component_count(&self) -> usize {
        self.lines.len() + usize::from(self.has_point)
    }
}

impl fmt::Display for ModuliDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.component_count() == 0 {
            return write!(f, "empty");
        }
        let mut first = true;
        if self.has_point {
            write!(f, "point")?;
            first = false;
        }
        for a in &self.lines {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "line@{}", a)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for ModuliDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Moduli of torus structures modeled on `G_D`: one affine line of
/// deformations when `0` lies in the support, nothing otherwise.
pub fn moduli_gd_torus(d: &Divisor) -> ModuliDescription {
    let mut out = ModuliDescription::empty();
    if quotient_dim(d, &GaussRat::zero()) > 0 {
        out.lines.push(GaussRat::zero());
    }
    out
}

/// Moduli of torus structures modeled on `G'_D`: the isolated exceptional
/// structure plus one affine line per support point.
pub fn moduli_gdp_torus(d: &Divisor) -> ModuliDescription {
    let mut out = ModuliDescription::empty();
    out.has_point = true;
    for (a, _) in d.points() {
        if quotient_dim(d, a) > 0 {
            out.lines.push(a.clone());
        }
    }
    out
}
