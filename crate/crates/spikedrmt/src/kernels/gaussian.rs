//! GUE kernel and its finite-rank mean-shift perturbation.

use super::{best_of, parity, signed_pow, sum_series, IncompleteKind, KernelModel, LogAccumulator, SERIES_TERMS};
use crate::error::{domain, Error, Result};
use crate::specialfn::{binomial, hermite_weighted_log, ln_factorial, SignedLogValue};
use std::f64::consts::{LN_2, PI};

/// K_n^GUE(x, y) = Σ_{p<n} ψ_p(x) ψ_p(y) with ψ_p the orthonormal Hermite
/// functions.
pub fn kernel_gue(n: usize, x: f64, y: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::EmptyRequest("kernel_gue with n = 0"));
    }
    let px = hermite_weighted_log(n, x)?;
    let py = if x == y { px.clone() } else { hermite_weighted_log(n, y)? };
    Ok(pair_sum(&px, &py, n))
}

pub(crate) fn pair_sum(a: &[SignedLogValue], b: &[SignedLogValue], n: usize) -> f64 {
    let terms: Vec<SignedLogValue> = a[..n].iter().zip(&b[..n]).map(|(u, v)| *u * *v).collect();
    SignedLogValue::sum_slice(&terms).to_f64()
}

/// C(n+k−1, k): the coefficient of t^k in (1−t)^{−n}; 1 for k = 0 even when n = 0.
pub(crate) fn multiset(n: usize, k: usize) -> f64 {
    if k == 0 {
        1.0
    } else if n == 0 {
        0.0
    } else {
        binomial(n + k - 1, k)
    }
}

/// ln of the factor turning ψ_k into H_k e^{−x²/2} / (2^k k!).
fn log_reduced_factor(k: usize) -> f64 {
    0.25 * PI.ln() - 0.5 * (k as f64 * LN_2 + ln_factorial(k))
}

/// ln of the factor turning ψ_n into H_n e^{−x²/2} / √π.
fn log_plain_factor(n: usize) -> f64 {
    0.5 * (n as f64 * LN_2 + ln_factorial(n)) - 0.25 * PI.ln()
}

/// Incomplete Hermite functions of a shifted GUE, in the symmetric gauge:
/// `tilde_j(x) = Γ̃⁽ʲ⁾(x) e^{−x²/2}` and `plain_j(y) = Γ⁽ʲ⁾(y) e^{y²/2}`.
struct HermiteSpike {
    /// Unperturbed rank N − r.
    base: usize,
    rank: usize,
    c: f64,
}

impl HermiteSpike {
    fn new(model: &KernelModel) -> Result<Self> {
        model.validate()?;
        match *model {
            KernelModel::ShiftedGue { n, r, c } => Ok(Self { base: n - r, rank: r, c }),
            _ => Err(Error::Config("expected a ShiftedGue model".into())),
        }
    }

    /// ψ_k(x) for all k needed by either evaluation route.
    fn sequence_len(&self) -> usize {
        self.base + self.rank + SERIES_TERMS
    }

    /// Γ̃⁽ʲ⁾(x) e^{−x²/2} for j = 1..=r, given ψ_0(x), ψ_1(x), ….
    fn tilde(&self, x: f64, psi: &[SignedLogValue]) -> Vec<SignedLogValue> {
        let reduced = |k: usize| psi[k].scale_log(log_reduced_factor(k));
        let (m, c) = (self.base, self.c);
        let shifted = if c > 0.0 && self.rank > 0 { hermite_weighted_log(self.rank, x - c).ok() } else { None };
        (1..=self.rank)
            .map(|j| {
                // Merged-pole series: Σ_q (−2c)^q C(j+q−1,q) (−1)^k u_k(x),
                // k = m+j−1+q, the Laurent expansion about z = 0 of the
                // whole integrand (exact for c = 0).
                let series = sum_series(SERIES_TERMS, |q| {
                    let k = m + j - 1 + q;
                    signed_pow(-2.0 * c, q as i64) * multiset(j, q) * parity(k) * reduced(k)
                });
                let residues = shifted.as_ref().map(|shifted| {
                    // Pole of order m at the origin.
                    let mut acc = LogAccumulator::new();
                    for p in 0..m {
                        acc.push(
                            parity(m - 1)
                                * multiset(j, p)
                                * signed_pow(2.0 * c, -((j + p) as i64))
                                * reduced(m - 1 - p),
                        );
                    }
                    // Pole of order j at z = −2c:
                    // e^{cx−c²/2} (−2c)^{−m} Σ_q C(m+q−1,q) (2c)^{−q} (−1)^{j−1−q} u_{j−1−q}(x−c).
                    let prefactor = signed_pow(-2.0 * c, -(m as i64)).scale_log(c * x - 0.5 * c * c);
                    for q in 0..j {
                        let i = j - 1 - q;
                        acc.push(
                            prefactor
                                * multiset(m, q)
                                * signed_pow(2.0 * c, -(q as i64))
                                * parity(i)
                                * shifted[i].scale_log(log_reduced_factor(i)),
                        );
                    }
                    acc.finish()
                });
                match (residues, series) {
                    (Some(r), s) => best_of(r, s),
                    (None, Some(s)) => s.value,
                    (None, None) => SignedLogValue::ZERO,
                }
            })
            .collect()
    }

    /// Γ⁽ʲ⁾(y) e^{y²/2} for j = 1..=r, given ψ_0(y), …, ψ_{N−1}(y).
    fn plain(&self, psi: &[SignedLogValue]) -> Vec<SignedLogValue> {
        let (m, c) = (self.base, self.c);
        (1..=self.rank)
            .map(|j| {
                let terms: Vec<SignedLogValue> = (0..j)
                    .map(|l| {
                        let n = m + l;
                        signed_pow(2.0 * c, (j - 1 - l) as i64)
                            * binomial(j - 1, l)
                            * parity(n)
                            * psi[n].scale_log(log_plain_factor(n))
                    })
                    .collect();
                SignedLogValue::sum_slice(&terms)
            })
            .collect()
    }

    /// Σ_j tilde_j(x) plain_j(y) (symmetric gauge) plus the unperturbed part.
    fn kernel(&self, x: f64, y: f64) -> Result<f64> {
        let psi_x = hermite_weighted_log(self.sequence_len(), x)?;
        let psi_y = if x == y { psi_x.clone() } else { hermite_weighted_log(self.base + self.rank, y)? };
        let base = if self.base > 0 { pair_sum(&psi_x, &psi_y, self.base) } else { 0.0 };
        Ok(base + self.spike(x, &psi_x, &psi_y).to_f64())
    }

    fn spike(&self, x: f64, psi_x: &[SignedLogValue], psi_y: &[SignedLogValue]) -> SignedLogValue {
        let tilde = self.tilde(x, psi_x);
        let plain = self.plain(psi_y);
        let terms: Vec<SignedLogValue> = tilde.iter().zip(&plain).map(|(a, b)| *a * *b).collect();
        SignedLogValue::sum_slice(&terms)
    }
}

/// Γ̃⁽ʲ⁾(x) (`Tilde`) or Γ⁽ʲ⁾(x) (`Plain`) of a shifted GUE, in their
/// defining normalization (Γ carries the weight e^{−x²}).
pub fn incomplete_hermite(kind: IncompleteKind, j: usize, x: f64, model: &KernelModel) -> Result<SignedLogValue> {
    let spike = HermiteSpike::new(model)?;
    if j == 0 || j > spike.rank {
        return Err(domain(format!("index j = {j} outside 1..={}", spike.rank)));
    }
    Ok(match kind {
        IncompleteKind::Tilde => {
            let psi = hermite_weighted_log(spike.sequence_len(), x)?;
            spike.tilde(x, &psi)[j - 1].scale_log(0.5 * x * x)
        }
        IncompleteKind::Plain => {
            let psi = hermite_weighted_log(spike.base + spike.rank, x)?;
            spike.plain(&psi)[j - 1].scale_log(-0.5 * x * x)
        }
    })
}

/// Correlation kernel of the shifted GUE (symmetric gauge).
pub fn kernel_shifted_gue(model: &KernelModel, x: f64, y: f64) -> Result<f64> {
    HermiteSpike::new(model)?.kernel(x, y)
}

/// Eigenvalue density of the shifted GUE (integrates to N).
pub fn density_shifted_gue(model: &KernelModel, x: f64) -> Result<f64> {
    Ok(kernel_shifted_gue(model, x, x)?.max(0.0))
}

/// The rank-r correction Σ_j Γ̃⁽ʲ⁾(x) Γ⁽ʲ⁾(y) in its defining gauge.
pub fn shifted_gue_spike_term(model: &KernelModel, x: f64, y: f64) -> Result<f64> {
    let spike = HermiteSpike::new(model)?;
    let psi_x = hermite_weighted_log(spike.sequence_len(), x)?;
    let psi_y = hermite_weighted_log(spike.base + spike.rank, y)?;
    Ok(spike.spike(x, &psi_x, &psi_y).scale_log(0.5 * (x * x - y * y)).to_f64())
}

/// Large-shift form of the rank-r correction: e^{2c(x−y)} K_r^GUE(x−c, y−c).
pub fn kernel_shifted_gue_asymptotic(r: usize, c: f64, x: f64, y: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(domain(format!("asymptotic form needs c > 0, got {c}")));
    }
    if r == 0 {
        return Ok(0.0);
    }
    let px = hermite_weighted_log(r, x - c)?;
    let py = hermite_weighted_log(r, y - c)?;
    let terms: Vec<SignedLogValue> = px.iter().zip(&py).map(|(a, b)| *a * *b).collect();
    Ok(SignedLogValue::sum_slice(&terms).scale_log(2.0 * c * (x - y)).to_f64())
}
