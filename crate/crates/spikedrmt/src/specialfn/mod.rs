//! Special functions and exact combinatorics.
//!
//! Everything that might overflow a double at the matrix sizes used by the
//! kernels (N, m up to a few thousand) is evaluated through pre-weighted
//! orthonormal recurrences and carried in [`SignedLogValue`] form. Raw
//! Hermite/Laguerre polynomials are only exposed up to degree 30.

mod bessel;
mod combinatorics;
mod gamma;
mod hermite;
mod laguerre;
mod signed_log;

pub use bessel::{bessel_i_scaled, bessel_i_scaled_log, hyp0f1_log, hyp0f1_series};
pub use combinatorics::{binomial_exact, catalan, narayana, narayana_generating_closed, narayana_polynomial};
pub use gamma::{binomial, gamma_signed, ln_binomial, ln_factorial, ln_gamma, pochhammer, recip_gamma_signed};
pub use hermite::{hermite_poly, hermite_weighted, hermite_weighted_log};
pub use laguerre::{laguerre_poly, laguerre_weighted, laguerre_weighted_log};
pub use signed_log::SignedLogValue;

pub(crate) use laguerre::shifted_parameter_laguerre_log;
