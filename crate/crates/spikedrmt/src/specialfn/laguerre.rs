//! Orthonormal Laguerre functions and Laguerre polynomials in log space.

use super::{ln_gamma, SignedLogValue};
use crate::error::{domain, Error, Result};

const RESCALE: f64 = 1e150;

/// Largest degree for which raw Laguerre polynomials are exposed.
pub const RAW_POLYNOMIAL_MAX_DEGREE: usize = 30;

/// φ_0(x), …, φ_{n−1}(x) in signed log form, where
/// φ_p(x) = (p!/Γ(p+a+1))^{1/2} x^{a/2} e^{−x/2} L_p^a(x).
///
/// Uses the orthonormal recurrence
/// √((p+1)(p+a+1)) φ_{p+1} = (2p+1+a−x) φ_p − √(p(p+a)) φ_{p−1}.
pub fn laguerre_weighted_log(n: usize, a: f64, x: f64) -> Result<Vec<SignedLogValue>> {
    if n == 0 {
        return Err(Error::EmptyRequest("laguerre_weighted with n = 0"));
    }
    check_params(a, x)?;
    let log_prefactor = if x == 0.0 {
        match a.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => return Ok(vec![SignedLogValue::ZERO; n]),
            Some(std::cmp::Ordering::Less) => f64::INFINITY,
            _ => 0.0,
        }
    } else {
        0.5 * a * x.ln() - 0.5 * x
    };
    let mut log_scale = log_prefactor - 0.5 * ln_gamma(a + 1.0);
    let mut out = Vec::with_capacity(n);
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    out.push(SignedLogValue::from_f64(cur).scale_log(log_scale));
    for p in 0..n.saturating_sub(1) {
        let pf = p as f64;
        let next =
            ((2.0 * pf + 1.0 + a - x) * cur - (pf * (pf + a)).sqrt() * prev) / ((pf + 1.0) * (pf + a + 1.0)).sqrt();
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

/// φ_0(x), …, φ_{n−1}(x) materialized as floats.
pub fn laguerre_weighted(n: usize, a: f64, x: f64) -> Result<Vec<f64>> {
    Ok(laguerre_weighted_log(n, a, x)?.into_iter().map(SignedLogValue::to_f64).collect())
}

fn check_params(a: f64, x: f64) -> Result<()> {
    if !(a > -1.0) {
        return Err(domain(format!("Laguerre parameter a = {a} must exceed -1")));
    }
    if !(x >= 0.0) {
        return Err(domain(format!("Laguerre argument x = {x} must be nonnegative")));
    }
    Ok(())
}

/// L_0^a(x), …, L_{n−1}^a(x) in signed log form, for any real `a` and `x`.
///
/// Unweighted recurrence (p+1)L_{p+1} = (2p+1+a−x)L_p − (p+a)L_{p−1} with
/// running rescaling; it differs from the orthonormal recurrence only by
/// positive per-degree factors and shares its stability.
pub(crate) fn laguerre_poly_log(n: usize, a: f64, x: f64) -> Vec<SignedLogValue> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut log_scale = 0.0;
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    out.push(SignedLogValue::ONE);
    for p in 0..n - 1 {
        let pf = p as f64;
        let next = ((2.0 * pf + 1.0 + a - x) * cur - (pf + a) * prev) / (pf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        } else if cur.abs() < 1.0 / RESCALE && prev.abs() < 1.0 / RESCALE && cur != 0.0 {
            cur *= RESCALE;
            prev *= RESCALE;
            log_scale -= RESCALE.ln();
        }
        out.push(SignedLogValue::from_f64(cur).scale_log(log_scale));
    }
    out
}

/// The family g_k(x) = L_k^{A−k}(x), k = 0..n, i.e. the coefficients of
/// e^{−xz}(1+z)^A, via (k+1)g_{k+1} = (A−k−x)g_k − x g_{k−1}.
pub(crate) fn shifted_parameter_laguerre_log(n: usize, big_a: f64, x: f64) -> Vec<SignedLogValue> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut log_scale = 0.0;
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    out.push(SignedLogValue::ONE);
    for k in 0..n - 1 {
        let kf = k as f64;
        let next = ((big_a - kf - x) * cur - x * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        } else if cur.abs() < 1.0 / RESCALE && prev.abs() < 1.0 / RESCALE && cur != 0.0 {
            cur *= RESCALE;
            prev *= RESCALE;
            log_scale -= RESCALE.ln();
        }
        out.push(SignedLogValue::from_f64(cur).scale_log(log_scale));
    }
    out
}

/// Raw generalized Laguerre polynomial L_p^a(x), only for p ≤ 30.
pub fn laguerre_poly(p: usize, a: f64, x: f64) -> Result<f64> {
    if p > RAW_POLYNOMIAL_MAX_DEGREE {
        return Err(domain(format!("raw Laguerre polynomials are limited to degree {RAW_POLYNOMIAL_MAX_DEGREE}")));
    }
    Ok(laguerre_poly_log(p + 1, a, x)[p].to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::ln_factorial;

    fn log_laguerre_norm(p: usize, a: f64) -> f64 {
        0.5 * (ln_factorial(p) - ln_gamma(p as f64 + a + 1.0))
    }

    #[test]
    fn trivial_values() {
        assert_eq!(laguerre_weighted(1, 0.0, 0.0).unwrap(), vec![1.0]);
        let v = laguerre_weighted(2, 2.0, 1.0).unwrap();
        // φ_1 = (1/Γ(4))^{1/2} · x · e^{−x/2} · L_1^2(1), with L_1^2(1) = 2
        let expected = (1.0f64 / 6.0).sqrt() * (-0.5f64).exp() * 2.0;
        assert!((v[1] - expected).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(laguerre_weighted(3, -1.0, 1.0).is_err());
        assert!(laguerre_weighted(3, 0.5, -1.0).is_err());
        assert!(laguerre_weighted(0, 0.5, 1.0).is_err());
    }

    #[test]
    fn weighted_matches_polynomial_family() {
        let (a, x) = (1.5, 3.7);
        let phi = laguerre_weighted(20, a, x).unwrap();
        let poly = laguerre_poly_log(20, a, x);
        for p in 0..20 {
            let rebuilt = poly[p].scale_log(log_laguerre_norm(p, a) + 0.5 * a * x.ln() - 0.5 * x).to_f64();
            assert!((rebuilt - phi[p]).abs() < 1e-13 * phi[p].abs().max(1e-3), "p={p}");
        }
    }

    #[test]
    fn shifted_parameter_family() {
        let (big_a, x) = (7.5, 2.25);
        let g = shifted_parameter_laguerre_log(8, big_a, x);
        for k in 0..8 {
            let direct = laguerre_poly(k, big_a - k as f64, x).unwrap();
            assert!((g[k].to_f64() - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn value_at_origin() {
        // L_p^a(0) = C(p+a, p)
        let poly = laguerre_poly_log(6, 0.5, 0.0);
        let expected = (ln_gamma(5.0 + 1.5) - ln_gamma(1.5) - ln_factorial(5)).exp();
        assert!((poly[5].to_f64() - expected).abs() < 1e-12 * expected);
    }
}
