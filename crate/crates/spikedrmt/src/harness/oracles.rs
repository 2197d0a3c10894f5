//! Independent reference computations used by the verification suite:
//! contour quadrature, complex ₀F₁, dense eigensolvers and the
//! partition-series definition of the matrix-argument hypergeometric
//! functions. They are slow and only accurate in benign parameter ranges.

use nalgebra::{Complex, DMatrix};
use std::f64::consts::PI;

pub type C64 = Complex<f64>;

/// ∮ f(z) dz/(2πi) over the circle |z − center| = radius (real part), by
/// the trapezoid rule with node doubling from 512 until two successive
/// values agree to 1e−14 (or 2¹⁶ nodes).
pub fn contour_integral(center: C64, radius: f64, f: impl Fn(C64) -> C64) -> f64 {
    let eval = |n: usize| {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n {
            let e = C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            acc += f(center + e * radius) * e * radius;
        }
        (acc / n as f64).re
    };
    let mut n = 512;
    let mut prev = eval(n);
    loop {
        n *= 2;
        let next = eval(n);
        if (next - prev).abs() <= 1e-14 * next.abs().max(1e-300) || n >= 1 << 16 {
            return next;
        }
        prev = next;
    }
}

/// ₀F₁(b; z) for complex z by its power series.
pub fn hyp0f1_complex(b: f64, z: C64) -> C64 {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..400 {
        term = term * z / ((k as f64 + 1.0) * (b + k as f64));
        sum += term;
        if term.norm() < 1e-18 * sum.norm() && k > 10 {
            break;
        }
    }
    sum
}

/// z^p on the principal branch.
pub fn cpow(z: C64, p: f64) -> C64 {
    (z.ln() * p).exp()
}

/// Eigenvalues (descending) of diag(d) + μ y yᵀ by a dense solver.
pub fn dense_rank_one_eigenvalues(diag: &[f64], y: &[f64], mu: f64) -> Vec<f64> {
    let n = diag.len();
    let a = DMatrix::from_fn(n, n, |i, j| mu * y[i] * y[j] + if i == j { diag[i] } else { 0.0 });
    let mut ev: Vec<f64> = a.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Partitions of `total` into at most `max_parts` parts, each ≤ `largest`.
pub fn partitions(total: usize, max_parts: usize, largest: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    if max_parts == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=largest.min(total)).rev() {
        for mut rest in partitions(total - first, max_parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn complete_homogeneous(x: &[f64], max: usize) -> Vec<f64> {
    let mut h = vec![0.0; max + 1];
    h[0] = 1.0;
    for &v in x {
        for k in 1..=max {
            h[k] += v * h[k - 1];
        }
    }
    h
}

/// Schur polynomial s_κ(x) by the Jacobi–Trudi determinant.
pub fn schur_polynomial(kappa: &[usize], x: &[f64]) -> f64 {
    let size: usize = kappa.iter().sum();
    let h = complete_homogeneous(x, size + kappa.len());
    let l = kappa.len();
    if l == 0 {
        return 1.0;
    }
    DMatrix::from_fn(l, l, |i, j| {
        let k = kappa[i] as i64 - i as i64 + j as i64;
        if k < 0 {
            0.0
        } else {
            h[k as usize]
        }
    })
    .determinant()
}

fn inverse_hook_product(kappa: &[usize]) -> f64 {
    let conj = |j: usize| kappa.iter().filter(|&&p| p > j).count();
    let mut product = 1.0;
    for (i, &row) in kappa.iter().enumerate() {
        for j in 0..row {
            product *= (row - j - 1 + conj(j) - i) as f64;
        }
    }
    1.0 / product
}

fn generalized_pochhammer(a: f64, kappa: &[usize]) -> f64 {
    kappa.iter().enumerate().map(|(i, &p)| (0..p).map(|j| a - i as f64 + j as f64).product::<f64>()).product()
}

/// Partition series of ₀F₀(x; y) (`bessel_parameter = None`) or
/// ₀F₁(a; x; y) at β = 2, truncated at |κ| ≤ `max_size`.
pub fn hypergeometric_series(x: &[f64], y: &[f64], bessel_parameter: Option<f64>, max_size: usize) -> f64 {
    let n = x.len();
    let ones = vec![1.0; n];
    let mut total = 0.0;
    for size in 0..=max_size {
        for kappa in partitions(size, n, size) {
            let mut term = inverse_hook_product(&kappa) * schur_polynomial(&kappa, x) * schur_polynomial(&kappa, y)
                / schur_polynomial(&kappa, &ones);
            if let Some(a) = bessel_parameter {
                term /= generalized_pochhammer(a, &kappa);
            }
            total += term;
        }
    }
    total
}

/// Ornstein–Uhlenbeck transition density relaxing to e^{−λ²}/√π:
/// Gaussian with mean e^{−τ}λ⁰ and variance (1 − e^{−2τ})/2.
pub fn ornstein_uhlenbeck_kernel(lambda: f64, start: f64, tau: f64) -> f64 {
    let t = (-tau).exp();
    let var = 1.0 - t * t;
    (-(lambda - t * start).powi(2) / var).exp() / (PI * var).sqrt()
}
