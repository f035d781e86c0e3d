//! Exp-polynomials and the function spaces cut out by divisors.
//!
//! A divisor `D = sum n_j [lambda_j]` on the complex line selects the space
//! `V_D` spanned by `z^k e^{lambda_j z}` for `0 <= k < n_j`. The constant-
//! coefficient operator `P_D = prod (d/dz - lambda_j)^{n_j}` annihilates
//! exactly `V_D`, which makes membership decidable by inspection of the
//! stored frequencies and degrees.
//!
//! `ExpPoly` is a univariate exp-polynomial `sum_lambda p_lambda(z) e^{lambda z}`
//! with `ExpScalar` polynomial coefficients; `ExpPoly2` is the bivariate
//! analogue in `(s, t)` used for developing maps. Both are canonical sparse
//! forms: no zero polynomials, no zero coefficients, so `==` decides equality
//! of the functions they denote.

mod bi;
mod divisor;
mod poly;
mod uni;

pub use bi::{ExpPoly2, Poly2};
pub use divisor::Divisor;
pub use uni::{vd_basis, ExpPoly};
