//! Special functions and quadrature used throughout the crate.

mod bessel;
mod gamma;
mod polynomials;
mod quadrature;

pub use bessel::{bessel_j, bessel_j_triplet};
pub use gamma::{gamma_fn, ln_gamma};
pub use polynomials::{
    assoc_laguerre, gegenbauer_orthonormal, laguerre_norm_factor, orthonormal_laguerre,
    PolynomialEval,
};
pub use quadrature::{gauss_legendre, QuadratureRule};

pub(crate) use gamma::gamma_pos;
pub(crate) use polynomials::{laguerre, laguerre_derivative, laguerre_second_derivative};
