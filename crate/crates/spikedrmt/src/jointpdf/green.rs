//! Green functions of the β=2 Dyson Brownian motion (Ornstein–Uhlenbeck
//! drift) for the Gaussian and chiral eigenvalue gases.
//!
//! Both are normalized transition densities over ordered configurations.
//! The constants follow from the Karlin–McGregor formula for N
//! non-colliding one-dimensional processes, Doob-transformed by the
//! Vandermonde (in λ or in λ²), rewritten in terms of ₀F₀ / ₀F₁.

use super::hypergeometric::{f00_unitary, f01_unitary, log_abs_vandermonde};
use super::EigenConfiguration;
use crate::error::{domain, Error, Result};
use crate::specialfn::{ln_factorial, ln_gamma, SignedLogValue};
use std::f64::consts::{LN_2, PI};

/// Largest N accepted by [`green_function`].
pub const MAX_GREEN_SIZE: usize = 4;

/// Which eigenvalue gas evolves.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GreenFamily {
    /// Potential W = −Σ log|λ_k − λ_j| + ½ Σ λ².
    Gaussian,
    /// Potential W = ½ Σ x² − (α'/2) Σ log x² − Σ log|x_k² − x_j²| with
    /// α' = α + ½ (positive eigenvalues of an (m+α)×m chiral matrix).
    Chiral { alpha: f64 },
}

/// How the chiral Green function's parameter t depends on τ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChiralTime {
    /// t = e^{−2τ}: the chiral formula written with (1 − t) uses the square
    /// of the Gaussian decay factor. This is the validated convention.
    #[default]
    SquaredDecay,
    /// t = e^{−τ}, the same parameter as the Gaussian formula. Kept only so
    /// that tests can show it violates the semigroup property.
    SameAsGaussian,
}

/// G_τ(λ | λ⁽⁰⁾) for `config.tau = Some(τ)`, in signed log form.
pub fn green_function(family: GreenFamily, config: &EigenConfiguration) -> Result<SignedLogValue> {
    green_function_with(family, config, ChiralTime::default())
}

/// [`green_function`] with an explicit chiral time convention.
pub fn green_function_with(
    family: GreenFamily,
    config: &EigenConfiguration,
    convention: ChiralTime,
) -> Result<SignedLogValue> {
    let tau = config.tau.ok_or_else(|| domain("the Green function needs an evolution time tau > 0"))?;
    if !(tau > 0.0) {
        return Err(domain(format!("tau = {tau} must be positive")));
    }
    let n = config.len();
    if n > MAX_GREEN_SIZE {
        return Err(Error::Unsupported(format!("Green functions are evaluated for N <= {MAX_GREEN_SIZE}")));
    }
    let (lambda, lambda0) = (&config.lambda, &config.lambda0);
    let nf = n as f64;
    let pairs = nf * (nf - 1.0) / 2.0;
    match family {
        GreenFamily::Gaussian => {
            // t = e^{−τ}, s² = 1 − t².
            let t = (-tau).exp();
            let s2 = -(-2.0 * tau).exp_m1();
            let s = s2.sqrt();
            let x: Vec<f64> = lambda.iter().map(|v| 2.0 * v * t / s).collect();
            let y: Vec<f64> = lambda0.iter().map(|v| v / s).collect();
            let log_constant =
                -0.5 * nf * (PI * s2).ln() + pairs * (LN_2 - s2.ln()) - (0..n).map(ln_factorial).sum::<f64>();
            let weight = 2.0 * log_abs_vandermonde(lambda)
                - lambda.iter().map(|v| v * v).sum::<f64>()
                - t * t / s2 * lambda.iter().chain(lambda0).map(|v| v * v).sum::<f64>();
            Ok(f00_unitary(&x, &y)?.scale_log(log_constant + weight))
        }
        GreenFamily::Chiral { alpha } => {
            if !(alpha > -1.0) {
                return Err(domain(format!("alpha = {alpha} must exceed -1")));
            }
            if lambda.iter().chain(lambda0).any(|v| *v < 0.0) {
                return Err(domain("chiral Green function needs nonnegative eigenvalues"));
            }
            if lambda[0] == 0.0 {
                return Ok(SignedLogValue::ZERO);
            }
            let t = match convention {
                ChiralTime::SquaredDecay => (-2.0 * tau).exp(),
                ChiralTime::SameAsGaussian => (-tau).exp(),
            };
            let one_minus_t = -(t.ln()).exp_m1();
            let squares: Vec<f64> = lambda.iter().map(|v| v * v).collect();
            let source: Vec<f64> = lambda0.iter().map(|v| v * v).collect();
            let x: Vec<f64> = squares.iter().map(|v| v / one_minus_t).collect();
            let y: Vec<f64> = source.iter().map(|v| t * v / one_minus_t).collect();
            let log_constant = nf * LN_2
                - nf * (alpha + nf) * one_minus_t.ln()
                - (0..n).map(|j| ln_factorial(j) + ln_gamma(alpha + 1.0 + j as f64)).sum::<f64>();
            let weight = (2.0 * alpha + 1.0) * lambda.iter().map(|v| v.ln()).sum::<f64>() - squares.iter().sum::<f64>()
                + 2.0 * log_abs_vandermonde(&squares)
                - t / one_minus_t * squares.iter().chain(&source).sum::<f64>();
            Ok(f01_unitary(alpha + nf, &x, &y)?.scale_log(log_constant + weight))
        }
    }
}
