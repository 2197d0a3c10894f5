//! Exact Catalan and Narayana numbers.

use crate::error::{Error, Result};

/// Exact binomial coefficient with overflow detection.
pub fn binomial_exact(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc.checked_mul(u128::from(n - i)).ok_or_else(|| Error::Overflow(format!("C({n},{k})")))?
            / u128::from(i + 1);
    }
    Ok(acc)
}

/// The k-th Catalan number C(2k,k)/(k+1).
pub fn catalan(k: u64) -> Result<u128> {
    if k > 64 {
        return Err(Error::Overflow(format!("catalan({k}) requested beyond k = 64")));
    }
    // Recurrence c_{i+1} = c_i · 2(2i+1)/(i+2) keeps intermediates small.
    let mut c: u128 = 1;
    for i in 0..k {
        let i = u128::from(i);
        c = c.checked_mul(2 * (2 * i + 1)).ok_or_else(|| Error::Overflow(format!("catalan({k})")))? / (i + 2);
    }
    Ok(c)
}

/// The Narayana number N(k, j) = C(k, j+1)·C(k, j)/k for k ≥ 1, 0 ≤ j < k.
pub fn narayana(k: u64, j: u64) -> Result<u128> {
    if k == 0 || j >= k {
        return Err(Error::Domain(format!("narayana({k},{j}) requires 0 <= j < k")));
    }
    let a = binomial_exact(k, j + 1)?;
    let b = binomial_exact(k, j)?;
    // Divide first where possible to delay overflow.
    let g = gcd(a, u128::from(k));
    let a = a / g;
    let rest = u128::from(k) / g;
    let prod = a.checked_mul(b).ok_or_else(|| Error::Overflow(format!("narayana({k},{j})")))?;
    Ok(prod / rest)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A_k(p, q) = Σ_{i=1}^{k} N(k, i−1) pⁱ q^{k+1−i}.
pub fn narayana_polynomial(k: u64, p: f64, q: f64) -> Result<f64> {
    let mut acc = 0.0;
    for i in 1..=k {
        let coeff = narayana(k, i - 1)? as f64;
        acc += coeff * p.powi(i as i32) * q.powi((k + 1 - i) as i32);
    }
    Ok(acc)
}

/// Closed form of the generating function Σ_{k≥1} A_k(p, q) tᵏ:
/// (1 − u − v − √(1 − 2(u+v) + (u−v)²)) / (2t) with u = pt, v = qt.
pub fn narayana_generating_closed(p: f64, q: f64, t: f64) -> f64 {
    let (u, v) = (p * t, q * t);
    (1.0 - u - v - (1.0 - 2.0 * (u + v) + (u - v) * (u - v)).sqrt()) / (2.0 * t)
}
