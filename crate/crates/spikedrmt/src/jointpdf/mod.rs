//! β=2 joint eigenvalue densities and Green functions at small N.
//!
//! The unitary-group integrals behind the shifted-mean, spiked-covariance
//! and chiral ensembles are evaluated exactly as determinants (see
//! [`f00_unitary`], [`f01_unitary`]). The resulting densities are
//! unnormalized; [`log_normalization`] integrates them numerically for
//! N ≤ 3. [`factorized_log_pdf`] gives the large-spike product forms that
//! the exact densities approach.

mod green;
mod hypergeometric;

pub use green::{green_function, green_function_with, ChiralTime, GreenFamily};
pub use hypergeometric::{f00_unitary, f01_unitary, log_abs_vandermonde, log_bessel_hciz_constant, log_hciz_constant};

use crate::error::{domain, Error, Result};
use crate::quadrature::GaussRule;
use crate::secular::{Beta, SpikeModel};
use crate::specialfn::SignedLogValue;

/// Largest N accepted by [`joint_pdf`].
pub const MAX_JOINT_PDF_SIZE: usize = 6;
/// Largest N accepted by [`log_normalization`].
pub const MAX_NORMALIZED_SIZE: usize = 3;

/// Minimum relative gap between eigenvalues of a configuration.
const MIN_RELATIVE_GAP: f64 = 1e-10;

/// Eigenvalues λ, source eigenvalues λ⁽⁰⁾ and an optional evolution time τ.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenConfiguration {
    pub lambda: Vec<f64>,
    pub lambda0: Vec<f64>,
    pub tau: Option<f64>,
}

impl EigenConfiguration {
    /// Checks that λ is strictly increasing with well-separated entries and
    /// that λ⁽⁰⁾ has the same length. λ⁽⁰⁾ may contain repeated values.
    pub fn new(lambda: Vec<f64>, lambda0: Vec<f64>, tau: Option<f64>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::EmptyRequest("eigenvalue configuration with no eigenvalues"));
        }
        if lambda.len() != lambda0.len() {
            return Err(Error::Dimension(format!(
                "lambda has {} entries but lambda0 has {}",
                lambda.len(),
                lambda0.len()
            )));
        }
        if lambda.iter().chain(&lambda0).any(|v| !v.is_finite()) {
            return Err(domain("eigenvalues must be finite"));
        }
        for w in lambda.windows(2) {
            if !(w[1] > w[0]) {
                return Err(domain("lambda must be strictly increasing"));
            }
            if w[1] - w[0] <= MIN_RELATIVE_GAP * w[0].abs().max(w[1].abs()).max(1.0) {
                return Err(Error::Conditioning(format!(
                    "eigenvalues {} and {} nearly coincide; perturb them symmetrically \
                     (e.g. by ±1e-6) before evaluating",
                    w[0], w[1]
                )));
            }
        }
        if let Some(t) = tau {
            if !(t > 0.0) || !t.is_finite() {
                return Err(domain(format!("tau = {t} must be positive")));
            }
        }
        Ok(Self { lambda, lambda0, tau })
    }

    /// Configuration with the source eigenvalues of `model`:
    /// ((0)^{N−r}, (shift)^r) for the shifted models, ((1/s)^r, (1)^{m−r})
    /// (eigenvalues of Σ⁻¹) for the Wishart models.
    pub fn for_model(model: &SpikeModel, lambda: Vec<f64>, tau: Option<f64>) -> Result<Self> {
        let lambda0 = source_eigenvalues(model)?;
        Self::new(lambda, lambda0, tau)
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }
}

/// Source eigenvalues λ⁽⁰⁾ of a model, in the variables of [`joint_pdf`].
pub fn source_eigenvalues(model: &SpikeModel) -> Result<Vec<f64>> {
    model.validate()?;
    let r = model.rank();
    Ok(match *model {
        SpikeModel::GaussianShift { n, c, .. } => {
            let shift = c * (2.0 * n as f64).sqrt() / 2.0;
            shifted_source(n, r, shift)
        }
        SpikeModel::ChiralShift { m, c, .. } => shifted_source(m, r, c * (m as f64).sqrt()),
        SpikeModel::WishartSpike { m, s, .. } | SpikeModel::WishartSpikeGamma { m, s, .. } => {
            let mut v = vec![1.0 / s; r];
            v.extend(std::iter::repeat_n(1.0, m - r));
            v
        }
    })
}

fn shifted_source(n: usize, r: usize, shift: f64) -> Vec<f64> {
    let mut v = vec![0.0; n - r];
    v.extend(std::iter::repeat_n(shift, r));
    v
}

/// The three β=2 densities, with α = n − m for the Wishart-type models.
#[derive(Clone, Copy, Debug)]
enum Family {
    Gaussian,
    Laguerre { alpha: f64 },
    Chiral { alpha: f64 },
}

fn family(model: &SpikeModel, size: usize) -> Result<Family> {
    model.validate()?;
    if model.beta() != Beta::Complex {
        return Err(Error::Unsupported("joint densities are implemented for β = 2 only".into()));
    }
    let expected = match *model {
        SpikeModel::GaussianShift { n, .. } => n,
        SpikeModel::WishartSpike { m, .. }
        | SpikeModel::WishartSpikeGamma { m, .. }
        | SpikeModel::ChiralShift { m, .. } => m,
    };
    if size != expected {
        return Err(Error::Dimension(format!("configuration has {size} eigenvalues but the model has {expected}")));
    }
    let alpha = || (model.samples().unwrap_or(expected) - expected) as f64;
    Ok(match model {
        SpikeModel::GaussianShift { .. } => Family::Gaussian,
        SpikeModel::WishartSpike { .. } | SpikeModel::WishartSpikeGamma { .. } => Family::Laguerre { alpha: alpha() },
        SpikeModel::ChiralShift { .. } => Family::Chiral { alpha: alpha() },
    })
}

/// Unnormalized joint density of the eigenvalues (positive eigenvalues for
/// the chiral model) given the source eigenvalues in `config.lambda0`:
///
/// * shifted GUE: Δ(λ)² e^{−Σ(λ²+λ⁰²)} ₀F₀(2λ⁰; λ);
/// * spiked LUE (λ⁰ = eigenvalues of Σ⁻¹): ∏λ^α Δ(λ)² ₀F₀(λ; −λ⁰);
/// * shifted chiral: ∏λ^{2α+1} e^{−Σ(λ²+λ⁰²)} Δ(λ²)² ₀F₁(n; λ²; λ⁰²).
pub fn joint_pdf(model: &SpikeModel, config: &EigenConfiguration) -> Result<SignedLogValue> {
    let fam = family(model, config.len())?;
    if config.len() > MAX_JOINT_PDF_SIZE {
        return Err(Error::Unsupported(format!("joint densities are evaluated for N <= {MAX_JOINT_PDF_SIZE}")));
    }
    log_density(fam, &config.lambda, &config.lambda0)
}

fn log_density(fam: Family, lambda: &[f64], lambda0: &[f64]) -> Result<SignedLogValue> {
    Ok(match fam {
        Family::Gaussian => {
            let scaled: Vec<f64> = lambda0.iter().map(|v| 2.0 * v).collect();
            let weight = 2.0 * log_abs_vandermonde(lambda) - lambda.iter().chain(lambda0).map(|v| v * v).sum::<f64>();
            f00_unitary(&scaled, lambda)?.scale_log(weight)
        }
        Family::Laguerre { alpha } => {
            if lambda.iter().any(|v| *v <= 0.0) {
                return Ok(SignedLogValue::ZERO);
            }
            let negated: Vec<f64> = lambda0.iter().map(|v| -v).collect();
            let weight = alpha * lambda.iter().map(|v| v.ln()).sum::<f64>() + 2.0 * log_abs_vandermonde(lambda);
            f00_unitary(lambda, &negated)?.scale_log(weight)
        }
        Family::Chiral { alpha } => {
            if lambda.iter().any(|v| *v <= 0.0) {
                return Ok(SignedLogValue::ZERO);
            }
            let squares: Vec<f64> = lambda.iter().map(|v| v * v).collect();
            let source: Vec<f64> = lambda0.iter().map(|v| v * v).collect();
            let weight = (2.0 * alpha + 1.0) * lambda.iter().map(|v| v.ln()).sum::<f64>()
                - squares.iter().chain(&source).sum::<f64>()
                + 2.0 * log_abs_vandermonde(&squares);
            f01_unitary(alpha + lambda.len() as f64, &squares, &source)?.scale_log(weight)
        }
    })
}

/// ln of ∫ joint_pdf over ordered configurations, by tensor Gauss–Legendre
/// quadrature (N ≤ 3).
pub fn log_normalization(model: &SpikeModel, lambda0: &[f64]) -> Result<f64> {
    let n = lambda0.len();
    let fam = family(model, n)?;
    if n == 0 || n > MAX_NORMALIZED_SIZE {
        return Err(Error::Unsupported(format!(
            "numerical normalization is available for 1 <= N <= {MAX_NORMALIZED_SIZE}"
        )));
    }
    let (lo, hi) = integration_box(fam, lambda0);
    let (order, panels) = match n {
        1 => (32, 24),
        2 => (24, 16),
        _ => (12, 8),
    };
    let rule = GaussRule::composite(order, panels, lo, hi);
    let (nodes, weights) = (&rule.nodes, &rule.weights);
    // A reference log-value keeps the exponentials in range.
    let mut reference = f64::NEG_INFINITY;
    let mut total = 0.0;
    let mut point = vec![0.0; n];
    let mut index = vec![0usize; n];
    loop {
        let mut w = 1.0;
        for (k, &i) in index.iter().enumerate() {
            point[k] = nodes[i];
            w *= weights[i];
        }
        let mut sorted = point.clone();
        sorted.sort_by(f64::total_cmp);
        let distinct = sorted.windows(2).all(|p| p[1] > p[0]);
        if distinct {
            let v = log_density(fam, &sorted, lambda0)?;
            if !v.is_zero() {
                let lv = v.log_magnitude();
                if lv > reference {
                    total *= (reference - lv).exp();
                    reference = lv;
                }
                total += w * f64::from(v.sign()) * (lv - reference).exp();
            }
        }
        // Advance the multi-index.
        let mut k = 0;
        loop {
            index[k] += 1;
            if index[k] < nodes.len() {
                break;
            }
            index[k] = 0;
            k += 1;
            if k == n {
                let factorial: f64 = (1..=n).map(|j| j as f64).product();
                if !(total > 0.0) {
                    return Err(Error::Degenerate("density integrates to zero on the box".into()));
                }
                return Ok(reference + (total / factorial).ln());
            }
        }
    }
}

fn integration_box(fam: Family, lambda0: &[f64]) -> (f64, f64) {
    let n = lambda0.len() as f64;
    let (min0, max0) = lambda0.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    match fam {
        Family::Gaussian => (min0 - 7.0 - (2.0 * n).sqrt(), max0 + 7.0 + (2.0 * n).sqrt()),
        Family::Laguerre { alpha } => (0.0, (4.0 * n + 2.0 * alpha + 45.0) / min0.max(1e-300)),
        Family::Chiral { alpha } => (0.0, max0 + 8.0 + 2.0 * (n + alpha).sqrt()),
    }
}

/// Normalized joint density (N ≤ 3): exp(ln joint_pdf − ln normalization).
pub fn joint_pdf_normalized(model: &SpikeModel, config: &EigenConfiguration) -> Result<f64> {
    let log_norm = log_normalization(model, &config.lambda0)?;
    Ok(joint_pdf(model, config)?.scale_log(-log_norm).to_f64())
}

/// ln of the large-spike product form of the joint density: the r spike
/// eigenvalues (largest, or smallest for a Wishart model with b̃ > 1) form
/// an independent r×r ensemble and the rest an (N−r)×(N−r) one.
///
/// With `with_correction` the cross-interaction between the two groups is
/// kept (|λ_s − λ_b| products, or their chiral analogue), which makes the
/// product form exact up to exponentially small terms (up to O(1/(λc))
/// Bessel corrections in the chiral case).
pub fn factorized_log_pdf(model: &SpikeModel, config: &EigenConfiguration, with_correction: bool) -> Result<f64> {
    let fam = family(model, config.len())?;
    let r = model.rank();
    let lambda = &config.lambda;
    let n = lambda.len();
    let ln_sum = |v: &[f64]| v.iter().map(|x| x.ln()).sum::<f64>();
    let sq_sum = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    let cross = |a: &[f64], b: &[f64], f: &dyn Fn(f64, f64) -> f64| {
        a.iter().flat_map(|x| b.iter().map(move |y| f(*x, *y).abs().ln())).sum::<f64>()
    };
    let max0 = config.lambda0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(match fam {
        Family::Gaussian => {
            let (bulk, spike) = lambda.split_at(n - r);
            let c = max0;
            let mut v = -spike.iter().map(|x| (x - c).powi(2)).sum::<f64>() + 2.0 * log_abs_vandermonde(spike)
                - sq_sum(bulk)
                + 2.0 * log_abs_vandermonde(bulk);
            if with_correction {
                v += cross(spike, bulk, &|x, y| x - y);
            }
            v
        }
        Family::Laguerre { alpha } => {
            let spike_value = config
                .lambda0
                .iter()
                .copied()
                .max_by(|a, b| (a - 1.0).abs().total_cmp(&(b - 1.0).abs()))
                .unwrap_or(1.0);
            if spike_value < 1.0 {
                // b̃ → 0: the r largest eigenvalues live at scale 1/b̃.
                let (bulk, spike) = lambda.split_at(n - r);
                let mut v = alpha * ln_sum(spike) - spike_value * spike.iter().sum::<f64>()
                    + 2.0 * log_abs_vandermonde(spike)
                    + alpha * ln_sum(bulk)
                    - bulk.iter().sum::<f64>()
                    + 2.0 * log_abs_vandermonde(bulk);
                v += if with_correction { cross(spike, bulk, &|x, y| x - y) } else { (n - r) as f64 * ln_sum(spike) };
                v
            } else {
                // b̃ → ∞: the r smallest eigenvalues live at scale 1/b̃.
                let (spike, bulk) = lambda.split_at(r);
                let mut v = alpha * ln_sum(spike) - spike_value * spike.iter().sum::<f64>()
                    + 2.0 * log_abs_vandermonde(spike)
                    + alpha * ln_sum(bulk)
                    - bulk.iter().sum::<f64>()
                    + 2.0 * log_abs_vandermonde(bulk);
                v += if with_correction { cross(spike, bulk, &|x, y| x - y) } else { r as f64 * ln_sum(bulk) };
                v
            }
        }
        Family::Chiral { alpha } => {
            let (bulk, spike) = lambda.split_at(n - r);
            let c = max0;
            let bulk_sq: Vec<f64> = bulk.iter().map(|x| x * x).collect();
            let mut v = -spike.iter().map(|x| (x - c).powi(2)).sum::<f64>()
                + 2.0 * log_abs_vandermonde(spike)
                + (2.0 * alpha + 1.0) * ln_sum(bulk)
                - sq_sum(bulk)
                + 2.0 * log_abs_vandermonde(&bulk_sq);
            if with_correction {
                v += (alpha + 0.5) * ln_sum(spike) + cross(spike, bulk, &|x, y| x * x - y * y);
                for (i, a) in spike.iter().enumerate() {
                    for b in &spike[i + 1..] {
                        v += (a + b).ln();
                    }
                }
            }
            v
        }
    })
}
