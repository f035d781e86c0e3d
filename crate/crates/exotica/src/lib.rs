//! Exact symbolic models of the exotic homogeneous surface geometries.
//!
//! Everything is computed in exact arithmetic: Gaussian rationals, formal
//! exponential symbols `E(mu)`, and sparse exp-polynomials. No floating point
//! appears anywhere; every check in the crate is a structural equality of
//! canonical forms.
//!
//! Module map:
//! * [`scalar`] — Gaussian rationals and the formal exponential ring.
//! * [`exppoly`] — divisors, the spaces `V_D`, and exp-polynomials in one and
//!   two variables.
//! * [`linalg`] — exact rank and solvability over the Gaussian rationals.
//! * [`groups`] — the groups `G_D` and `G'_D`, their Lie algebras and actions.
//! * [`homogeneous`] — the inducing-morphism catalog and its verifier.
//! * [`surfaces`] — tori and Kodaira surfaces, developing systems, gauge
//!   normal forms.
//! * [`moduli`] — quotient dimensions and the moduli descriptions.
//! * [`cli`] — the line-oriented scenario language behind the `exotica`
//!   binary.

pub mod cli;
pub mod error;
pub mod exppoly;
pub mod groups;
pub mod homogeneous;
pub mod linalg;
pub mod moduli;
pub mod parse;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod surfaces;

pub use error::Error;
pub use exppoly::{vd_basis, Divisor, ExpPoly, ExpPoly2};
pub use scalar::{rat, ExpScalar, GaussRat, Rat};
