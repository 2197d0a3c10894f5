//! Spiked random matrix ensembles: exact β=2 correlation kernels, secular
//! equations, limiting spectral laws and seeded Monte Carlo samplers.
//!
//! Three models are covered, each with a low-rank deterministic perturbation:
//!
//! * the shifted-mean Gaussian unitary/orthogonal ensemble `G + H⁽⁰⁾`;
//! * the spiked-covariance Wishart (Laguerre) ensemble `Σ^{1/2} Y†Y Σ^{1/2}`;
//! * the shifted-mean chiral ensemble built from `X + X⁽⁰⁾`.
//!
//! Modules, bottom-up: [`specialfn`] (stable recurrences, log-space numbers),
//! [`spectra`] (semicircle and Marchenko–Pastur laws), [`secular`] (rank-one
//! updates and separation predictors), [`ensembles`] (samplers),
//! [`kernels`] (exact densities), [`jointpdf`] (small-N joint densities via
//! HCIZ-type determinants) and [`harness`] (experiments, CSV/SVG output).

pub mod ensembles;
pub mod error;
pub mod harness;
pub mod jointpdf;
pub mod kernels;
pub mod quadrature;
pub mod secular;
pub mod specialfn;
pub mod spectra;
pub mod stats;

pub use error::{Error, Result};
