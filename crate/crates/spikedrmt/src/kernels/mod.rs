//! Exact β=2 correlation kernels for the shifted GUE, the spiked
//! (general-variance) LUE and the shifted chiral ensemble.
//!
//! Each kernel is a finite-rank perturbation of an unperturbed
//! Christoffel–Darboux kernel,
//!
//! ```text
//! K(x, y) = K_base(x, y) + Σ_j f̃_j(x) f_j(y),
//! ```
//!
//! where the biorthogonal pairs (f̃_j, f_j) are the incomplete Hermite
//! functions, the incomplete multiple Laguerre functions, or the chiral
//! p/q functions. The f̃_j are contour integrals around two poles; they are
//! evaluated either as the sum of the two residues (finite Hermite/Laguerre
//! sums) or, when the poles are close, as a convergent series about the
//! merged pole. Both forms are accumulated in signed log space and the one
//! with less cancellation is used.
//!
//! All kernels are returned in a *symmetric gauge*: the weight is split
//! evenly between the two arguments (`e^{−(x²+y²)/2}` for Hermite,
//! `(xy)^{a/2} e^{−(x+y)/2}` for Laguerre). This differs from the asymmetric
//! forms that put the whole weight on `y` by a conjugation
//! `K(x,y) ↦ g(x) K(x,y) / g(y)`, which leaves the diagonal and every
//! correlation determinant unchanged.

mod chiral;
mod gaussian;
mod laguerre;

pub use chiral::{
    chiral_asymptotic_pq, chiral_pq, chiral_spike_term, density_shifted_chiral, kernel_shifted_chiral, ChiralKind,
};
pub use gaussian::{
    density_shifted_gue, incomplete_hermite, kernel_gue, kernel_shifted_gue, kernel_shifted_gue_asymptotic,
    shifted_gue_spike_term,
};
pub use laguerre::{density_spiked_lue, incomplete_laguerre, kernel_laguerre, kernel_spiked_lue};

use crate::error::{domain, Error, Result};
use crate::specialfn::SignedLogValue;

/// Which member of a biorthogonal pair to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncompleteKind {
    /// The contour-integral function carrying the two-pole structure.
    Tilde,
    /// Its polynomial-times-weight partner.
    Plain,
}

/// A β=2 model whose correlation kernel is known exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelModel {
    /// N×N GUE plus a mean shift with eigenvalue `c` of multiplicity `r`.
    ShiftedGue { n: usize, r: usize, c: f64 },
    /// m×m LUE (parameter `alpha`) whose covariance has `r` eigenvalues
    /// equal to 1/`btilde`.
    SpikedLue { m: usize, alpha: f64, r: usize, btilde: f64 },
    /// Chiral ensemble (Gram size m, parameter `alpha`) with `r` singular
    /// values of the mean equal to `c`.
    ShiftedChiral { m: usize, alpha: f64, r: usize, c: f64 },
}

impl KernelModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelModel::ShiftedGue { n, r, c } => {
                if n == 0 {
                    return Err(Error::EmptyRequest("shifted GUE with N = 0"));
                }
                if r > n {
                    return Err(Error::Dimension(format!("rank r = {r} exceeds N = {n}")));
                }
                if !(c >= 0.0) || !c.is_finite() {
                    return Err(domain(format!("shift c = {c} must be finite and nonnegative")));
                }
            }
            KernelModel::SpikedLue { m, alpha, r, btilde } => {
                if m == 0 {
                    return Err(Error::EmptyRequest("spiked LUE with m = 0"));
                }
                if r > m {
                    return Err(Error::Dimension(format!("rank r = {r} exceeds m = {m}")));
                }
                if !(alpha > -1.0) {
                    return Err(domain(format!("alpha = {alpha} must exceed -1")));
                }
                if !(btilde > 0.0) || !btilde.is_finite() {
                    return Err(domain(format!("btilde = {btilde} must be finite and positive")));
                }
            }
            KernelModel::ShiftedChiral { m, alpha, r, c } => {
                if m == 0 {
                    return Err(Error::EmptyRequest("shifted chiral with m = 0"));
                }
                if r > m {
                    return Err(Error::Dimension(format!("rank r = {r} exceeds m = {m}")));
                }
                if !(alpha > -1.0) {
                    return Err(domain(format!("alpha = {alpha} must exceed -1")));
                }
                if !(c >= 0.0) || !c.is_finite() {
                    return Err(domain(format!("shift c = {c} must be finite and nonnegative")));
                }
            }
        }
        Ok(())
    }

    /// Number of eigenvalues the density integrates to (N or m).
    pub fn dimension(&self) -> usize {
        match *self {
            KernelModel::ShiftedGue { n, .. } => n,
            KernelModel::SpikedLue { m, .. } | KernelModel::ShiftedChiral { m, .. } => m,
        }
    }

    /// The kernel in the variables of the density: eigenvalues for the
    /// Gaussian and Laguerre models, positive eigenvalues λ (kernel at λ²)
    /// for the chiral model.
    pub fn kernel(&self, x: f64, y: f64) -> Result<f64> {
        match *self {
            KernelModel::ShiftedGue { .. } => kernel_shifted_gue(self, x, y),
            KernelModel::SpikedLue { .. } => kernel_spiked_lue(self, x, y),
            KernelModel::ShiftedChiral { .. } => kernel_shifted_chiral(self, x, y),
        }
    }

    /// One-point density (integrates to [`dimension`](Self::dimension)).
    pub fn density(&self, x: f64) -> Result<f64> {
        match *self {
            KernelModel::ShiftedGue { .. } => density_shifted_gue(self, x),
            KernelModel::SpikedLue { .. } => density_spiked_lue(self, x),
            KernelModel::ShiftedChiral { .. } => density_shifted_chiral(self, x),
        }
    }

    /// Natural plotting window covering the bulk and the spike lobe.
    pub fn support_hint(&self) -> (f64, f64) {
        match *self {
            KernelModel::ShiftedGue { n, c, .. } => {
                let edge = (2.0 * n as f64).sqrt();
                (-edge - 5.0, (edge + 5.0).max(c + 6.0))
            }
            KernelModel::SpikedLue { m, alpha, r, btilde } => {
                let bulk = 4.0 * m as f64 + 2.0 * alpha.abs() + 20.0;
                let lobe = if r > 0 {
                    ((4.0 * m as f64).max(m as f64 + alpha) + 10.0 * (m as f64).sqrt() + 20.0) / btilde
                } else {
                    0.0
                };
                (0.0, bulk.max(lobe))
            }
            KernelModel::ShiftedChiral { m, c, .. } => {
                let edge = 2.0 * (m as f64).sqrt();
                (0.0, (edge + 5.0).max(c + 6.0))
            }
        }
    }
}

/// n-point correlation ρ_(n)(x_1, …, x_n) = det[K(x_j, x_k)] (with the
/// Jacobian 2^n ∏ x_j for the chiral model, whose kernel lives at x²).
pub fn correl_n(model: &KernelModel, points: &[f64]) -> Result<f64> {
    model.validate()?;
    let n = points.len();
    if n == 0 {
        return Err(Error::EmptyRequest("correl_n with no points"));
    }
    let mut k = nalgebra::DMatrix::zeros(n, n);
    for (a, &x) in points.iter().enumerate() {
        for (b, &y) in points.iter().enumerate() {
            k[(a, b)] = model.kernel(x, y)?;
        }
    }
    let det = k.lu().determinant();
    Ok(match model {
        KernelModel::ShiftedChiral { .. } => points.iter().map(|x| 2.0 * x).product::<f64>() * det,
        _ => det,
    })
}

/// Log-space sum that remembers its largest term, so the amount of
/// cancellation (in nats) can be compared between evaluation routes.
#[derive(Default)]
pub(crate) struct LogAccumulator {
    terms: Vec<SignedLogValue>,
    max_log: f64,
}

pub(crate) struct Evaluated {
    pub value: SignedLogValue,
    /// ln(max |term|) − ln |value|; +∞ when the sum vanishes.
    pub loss: f64,
}

impl LogAccumulator {
    pub fn new() -> Self {
        Self { terms: Vec::new(), max_log: f64::NEG_INFINITY }
    }

    pub fn push(&mut self, term: SignedLogValue) {
        if !term.is_zero() {
            self.max_log = self.max_log.max(term.log_magnitude());
            self.terms.push(term);
        }
    }

    pub fn finish(self) -> Evaluated {
        let value = SignedLogValue::sum_slice(&self.terms);
        let loss = if self.terms.is_empty() {
            0.0
        } else if value.is_zero() {
            f64::INFINITY
        } else {
            (self.max_log - value.log_magnitude()).max(0.0)
        };
        Evaluated { value, loss }
    }
}

/// Number of extra orders tried by the merged-pole series before it is
/// declared non-convergent.
pub(crate) const SERIES_TERMS: usize = 240;

/// Sums `term(q)` for q = 0, 1, … until two consecutive terms are
/// negligible. `None` if that does not happen within `max_terms`.
pub(crate) fn sum_series(max_terms: usize, mut term: impl FnMut(usize) -> SignedLogValue) -> Option<Evaluated> {
    let mut acc = LogAccumulator::new();
    let mut running = SignedLogValue::ZERO;
    let mut quiet = 0;
    for q in 0..max_terms {
        let t = term(q);
        running = running + t;
        acc.push(t);
        let negligible = t.is_zero() || (!running.is_zero() && t.log_magnitude() < running.log_magnitude() - 40.0);
        quiet = if negligible { quiet + 1 } else { 0 };
        if quiet >= 3 && q >= 2 {
            return Some(acc.finish());
        }
    }
    None
}

/// Picks the route with less cancellation.
pub(crate) fn best_of(a: Evaluated, b: Option<Evaluated>) -> SignedLogValue {
    match b {
        Some(b) if b.loss < a.loss => b.value,
        _ => a.value,
    }
}

/// ln y^a with the conventions 0^0 = 1 and ln 0 = −∞.
pub(crate) fn log_pow(y: f64, a: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * y.ln()
    }
}

/// SignedLogValue for (−1)^k.
pub(crate) fn parity(k: usize) -> SignedLogValue {
    if k.is_multiple_of(2) {
        SignedLogValue::ONE
    } else {
        -SignedLogValue::ONE
    }
}

/// Signed-log power v^k of a real number.
pub(crate) fn signed_pow(v: f64, k: i64) -> SignedLogValue {
    if k == 0 {
        return SignedLogValue::ONE;
    }
    let base = SignedLogValue::from_f64(v);
    let sign = if v < 0.0 && k % 2 != 0 { -1 } else { 1 };
    SignedLogValue::new(sign, base.log_magnitude() * k as f64)
}
