//! Gamma-function helpers.

use super::SignedLogValue;

/// `ln|Γ(x)|`. Negative non-integer arguments are handled by reflection.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// Γ(x) as a signed log-space value (zero at the poles' reciprocal is not
/// representable; poles return an infinite magnitude).
pub fn gamma_signed(x: f64) -> SignedLogValue {
    let (lg, sign) = libm::lgamma_r(x);
    SignedLogValue::new(if sign < 0 { -1 } else { 1 }, lg)
}

/// 1/Γ(x), exactly zero at the poles x = 0, −1, −2, ….
pub fn recip_gamma_signed(x: f64) -> SignedLogValue {
    if x <= 0.0 && x == x.floor() {
        return SignedLogValue::ZERO;
    }
    let g = gamma_signed(x);
    SignedLogValue::new(g.sign(), -g.log_magnitude())
}

/// `ln k!`.
pub fn ln_factorial(k: usize) -> f64 {
    ln_gamma(k as f64 + 1.0)
}

/// Binomial coefficient C(n, k) for integer `n ≥ 0`, as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// `ln C(n, k)` for integers.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Rising factorial (a)_k as a float.
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + i as f64))
}
