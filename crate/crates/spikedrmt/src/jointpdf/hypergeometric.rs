//! ₀F₀ and ₀F₁ of two matrix arguments at β = 2 (Schur-function case) via
//! HCIZ-type determinants.
//!
//! Both functions have the form
//!
//! ```text
//! F(x; y) = const_N · det[g(x_i y_j)] / (Δ(x) Δ(y)),   Δ(x) = ∏_{i<j} (x_j − x_i),
//! ```
//!
//! with g(z) = e^z for ₀F₀ and g(z) = ₀F₁(a−N+1; z) for ₀F₁. Repeated
//! arguments are handled by the exact confluent limit: a block of k equal
//! entries is replaced by the derivatives ∂^p/p!, p < k, and the Vandermonde
//! keeps only the factors between distinct values.

use crate::error::{domain, Error, Result};
use crate::specialfn::{hyp0f1_log, ln_factorial, ln_gamma, SignedLogValue};
use nalgebra::DMatrix;

/// Entries closer than this (relative) are merged into one confluent block.
const MERGE_TOLERANCE: f64 = 1e-10;

/// ln ∏_{j<N} j!: the constant relating det[e^{x_i y_j}]/(Δ(x)Δ(y)) to the
/// partition series of ₀F₀. Fixed by series matching (see the jointpdf tests).
pub fn log_hciz_constant(n: usize) -> f64 {
    (0..n).map(ln_factorial).sum()
}

/// ln of the ₀F₁ constant ∏_{j<N} j! · ∏_{i=1}^{N} (a−N+1)_{N−i}.
pub fn log_bessel_hciz_constant(a: f64, n: usize) -> f64 {
    let b = a - n as f64 + 1.0;
    log_hciz_constant(n) + (0..n).map(|k| ln_gamma(b + k as f64) - ln_gamma(b)).sum::<f64>()
}

/// ₀F₀^{(1)}(x; y): generalized hypergeometric function of two matrix
/// arguments at β = 2, i.e. the unitary-group integral ∫ e^{Tr(U X U† Y)} dU.
pub fn f00_unitary(x: &[f64], y: &[f64]) -> Result<SignedLogValue> {
    check_arguments(x, y)?;
    let det = confluent_determinant(x, y, |_, z| Ok(SignedLogValue::from_log(z)))?;
    Ok(det.scale_log(log_hciz_constant(x.len())))
}

/// ₀F₁^{(1)}(a; x; y) at β = 2 (a > N − 1, x and y nonnegative).
pub fn f01_unitary(a: f64, x: &[f64], y: &[f64]) -> Result<SignedLogValue> {
    check_arguments(x, y)?;
    let n = x.len();
    let b = a - n as f64 + 1.0;
    if !(b > 0.0) {
        return Err(domain(format!("₀F₁ parameter a = {a} must exceed N − 1 = {}", n - 1)));
    }
    if x.iter().chain(y).any(|v| *v < 0.0) {
        return Err(domain("₀F₁ arguments must be nonnegative"));
    }
    // d^k/dz^k ₀F₁(b; z) = ₀F₁(b+k; z) / (b)_k.
    let det = confluent_determinant(x, y, |k, z| {
        let shifted = b + k as f64;
        Ok(hyp0f1_log(shifted, z.max(0.0))?.scale_log(ln_gamma(b) - ln_gamma(shifted)))
    })?;
    Ok(det.scale_log(log_bessel_hciz_constant(a, n)))
}

fn check_arguments(x: &[f64], y: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptyRequest("hypergeometric function with no arguments"));
    }
    if x.len() != y.len() {
        return Err(Error::Dimension(format!("argument lengths differ ({} vs {})", x.len(), y.len())));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(domain("arguments must be finite"));
    }
    Ok(())
}

/// Sorted distinct values with multiplicities.
fn confluent_groups(values: &[f64]) -> Vec<(f64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for v in sorted {
        match groups.last_mut() {
            Some((rep, count)) if (v - *rep).abs() <= MERGE_TOLERANCE * rep.abs().max(1.0) => *count += 1,
            _ => groups.push((v, 1)),
        }
    }
    groups
}

/// ln of ∏_{a<b} (v_b − v_a)^{k_a k_b} over distinct sorted values.
fn log_confluent_vandermonde(groups: &[(f64, usize)]) -> f64 {
    let mut total = 0.0;
    for (a, &(va, ka)) in groups.iter().enumerate() {
        for &(vb, kb) in &groups[a + 1..] {
            total += (ka * kb) as f64 * (vb - va).ln();
        }
    }
    total
}

/// ln |Δ(values)| = Σ_{i<j} ln |v_j − v_i| (−∞ for repeated values).
pub fn log_abs_vandermonde(values: &[f64]) -> f64 {
    let mut total = 0.0;
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i + 1..] {
            total += (b - a).abs().ln();
        }
    }
    total
}

/// det[g(x_i y_j)] / (Δ(x) Δ(y)) with confluent limits, given the
/// derivatives `deriv(k, z)` = g^{(k)}(z).
///
/// For an x-block derivative order p and a y-block order q the entry is
/// ∂_x^p ∂_y^q g(xy) / (p! q!) = Σ_i x^{q−i} y^{p−i} g^{(p+q−i)}(xy) / (i! (p−i)! (q−i)!).
fn confluent_determinant(
    x: &[f64],
    y: &[f64],
    deriv: impl Fn(usize, f64) -> Result<SignedLogValue>,
) -> Result<SignedLogValue> {
    let n = x.len();
    let expand = |groups: &[(f64, usize)]| -> Vec<(f64, usize)> {
        groups.iter().flat_map(|&(v, k)| (0..k).map(move |p| (v, p))).collect()
    };
    let (gx, gy) = (confluent_groups(x), confluent_groups(y));
    let (rows, cols) = (expand(&gx), expand(&gy));
    let mut entries = vec![SignedLogValue::ZERO; n * n];
    for (i, &(xv, p)) in rows.iter().enumerate() {
        for (j, &(yv, q)) in cols.iter().enumerate() {
            let z = xv * yv;
            let terms = (0..=p.min(q))
                .map(|k| {
                    let coeff = -(ln_factorial(k) + ln_factorial(p - k) + ln_factorial(q - k));
                    Ok(SignedLogValue::from_f64(xv).powi((q - k) as i32)
                        * SignedLogValue::from_f64(yv).powi((p - k) as i32)
                        * deriv(p + q - k, z)?.scale_log(coeff))
                })
                .collect::<Result<Vec<_>>>()?;
            entries[i * n + j] = SignedLogValue::sum_slice(&terms);
        }
    }
    let det = log_determinant(n, &entries);
    Ok(det.scale_log(-log_confluent_vandermonde(&gx) - log_confluent_vandermonde(&gy)))
}

/// Determinant of an n×n matrix of signed-log entries (row-major), after
/// row and column equilibration so that LU works on O(1) numbers.
fn log_determinant(n: usize, entries: &[SignedLogValue]) -> SignedLogValue {
    let log_at = |i: usize, j: usize| {
        let e = entries[i * n + j];
        if e.is_zero() {
            f64::NEG_INFINITY
        } else {
            e.log_magnitude()
        }
    };
    let row_scale: Vec<f64> = (0..n).map(|i| (0..n).map(|j| log_at(i, j)).fold(f64::NEG_INFINITY, f64::max)).collect();
    if row_scale.contains(&f64::NEG_INFINITY) {
        return SignedLogValue::ZERO;
    }
    let col_scale: Vec<f64> =
        (0..n).map(|j| (0..n).map(|i| log_at(i, j) - row_scale[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    if col_scale.contains(&f64::NEG_INFINITY) {
        return SignedLogValue::ZERO;
    }
    let m = DMatrix::from_fn(n, n, |i, j| entries[i * n + j].scale_log(-row_scale[i] - col_scale[j]).to_f64());
    let det = m.lu().determinant();
    SignedLogValue::from_f64(det).scale_log(row_scale.iter().sum::<f64>() + col_scale.iter().sum::<f64>())
}
