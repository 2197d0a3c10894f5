//! Orthonormal Hermite functions via the weighted three-term recurrence.

use super::SignedLogValue;
use crate::error::{Error, Result};

/// Largest degree for which raw Hermite polynomials are exposed.
pub const RAW_POLYNOMIAL_MAX_DEGREE: usize = 30;

// Rescaling threshold for the running recurrence pair.
const RESCALE: f64 = 1e150;

/// ψ_0(x), …, ψ_{n−1}(x) in signed log form, where
/// ψ_p(x) = H_p(x) e^{−x²/2} / (π^{1/4} 2^{p/2} √(p!)).
///
/// The recurrence ψ_{p+1} = √(2/(p+1)) x ψ_p − √(p/(p+1)) ψ_{p−1} is run on a
/// rescaled pair so that neither the Gaussian factor nor the polynomial growth
/// ever leaves the floating-point range.
pub fn hermite_weighted_log(n: usize, x: f64) -> Result<Vec<SignedLogValue>> {
    if n == 0 {
        return Err(Error::EmptyRequest("hermite_weighted with n = 0"));
    }
    let mut out = Vec::with_capacity(n);
    let mut log_scale = -0.5 * x * x - 0.25 * std::f64::consts::PI.ln();
    let mut prev = 0.0_f64;
    let mut cur = 1.0_f64;
    out.push(SignedLogValue::from_f64(cur).scale_log(log_scale));
    for p in 1..n {
        let pf = p as f64;
        let next = (2.0 / pf).sqrt() * x * cur - ((pf - 1.0) / pf).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out.push(SignedLogValue::from_f64(cur).scale_log(log_scale));
    }
    Ok(out)
}

/// ψ_0(x), …, ψ_{n−1}(x) materialized as floats (entries may underflow to 0
/// far outside the oscillatory region, never overflow since |ψ_p| < 1).
pub fn hermite_weighted(n: usize, x: f64) -> Result<Vec<f64>> {
    Ok(hermite_weighted_log(n, x)?.into_iter().map(SignedLogValue::to_f64).collect())
}

/// Physicists' Hermite polynomial H_p(x), only for p ≤ 30.
pub fn hermite_poly(p: usize, x: f64) -> Result<f64> {
    if p > RAW_POLYNOMIAL_MAX_DEGREE {
        return Err(Error::Domain(format!(
            "raw Hermite polynomials are limited to degree {RAW_POLYNOMIAL_MAX_DEGREE}"
        )));
    }
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if p == 0 {
        return Ok(h0);
    }
    for k in 1..p {
        let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    Ok(h1)
}
