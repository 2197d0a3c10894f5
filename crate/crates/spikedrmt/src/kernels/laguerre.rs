//! LUE kernel and its covariance-spike perturbation.

use super::gaussian::{multiset, pair_sum};
use super::{best_of, log_pow, signed_pow, sum_series, IncompleteKind, KernelModel, LogAccumulator, SERIES_TERMS};
use crate::error::{domain, Error, Result};
use crate::specialfn::{
    binomial, laguerre_weighted_log, ln_factorial, ln_gamma, shifted_parameter_laguerre_log, SignedLogValue,
};

/// Symmetric-gauge Laguerre kernel Σ_{p<n} φ_p^a(x) φ_p^a(y), with
/// φ_p^a(x) = (p!/Γ(p+a+1))^{1/2} x^{a/2} e^{−x/2} L_p^a(x).
pub fn kernel_laguerre(n: usize, a: f64, x: f64, y: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::EmptyRequest("kernel_laguerre with n = 0"));
    }
    if x < 0.0 || y < 0.0 {
        return Err(domain(format!("Laguerre kernel needs x, y >= 0 (got {x}, {y})")));
    }
    let px = laguerre_weighted_log(n, a, x)?;
    let py = if x == y { px.clone() } else { laguerre_weighted_log(n, a, y)? };
    Ok(pair_sum(&px, &py, n))
}

/// Smallest argument used inside the spike terms, so that x^{±a} factors of
/// the two members of a pair combine in log space instead of as 0·∞.
const TINY: f64 = f64::MIN_POSITIVE;

/// Incomplete multiple Laguerre functions of a spiked LUE, in the symmetric
/// gauge of the base kernel K^{α+r}_{m−r}:
/// `tilde_j(x) = Λ̃⁽ʲ⁾(x) x^{a/2} e^{−x/2}` and
/// `plain_j(y) = Λ⁽ʲ⁾(y) y^{−a/2} e^{y/2}` with a = α + r.
struct LaguerreSpike {
    base: usize,
    rank: usize,
    alpha: f64,
    btilde: f64,
}

impl LaguerreSpike {
    fn new(model: &KernelModel) -> Result<Self> {
        model.validate()?;
        match *model {
            KernelModel::SpikedLue { m, alpha, r, btilde } => Ok(Self { base: m - r, rank: r, alpha, btilde }),
            _ => Err(Error::Config("expected a SpikedLue model".into())),
        }
    }

    /// Parameter of the unperturbed kernel.
    fn base_parameter(&self) -> f64 {
        self.alpha + self.rank as f64
    }

    /// Exponent m + α of (1+z) in the contour integrand.
    fn big_a(&self) -> f64 {
        (self.base + self.rank) as f64 + self.alpha
    }

    /// Λ̃⁽ʲ⁾(x) for j = 1..=r in the defining normalization.
    fn tilde_raw(&self, x: f64) -> Vec<SignedLogValue> {
        let (m, big_a, bt) = (self.base, self.big_a(), self.btilde);
        let delta = bt - 1.0;
        // g_k(x) = L_k^{A−k}(x): Taylor coefficients of e^{−xz}(1+z)^A.
        let g = shifted_parameter_laguerre_log(m + self.rank + SERIES_TERMS, big_a, x);
        let g_scaled = shifted_parameter_laguerre_log(self.rank, big_a, x * bt);
        (1..=self.rank)
            .map(|j| {
                let series =
                    sum_series(SERIES_TERMS, |q| signed_pow(delta, q as i64) * multiset(j, q) * g[m + j - 1 + q]);
                if delta == 0.0 {
                    return series.map(|s| s.value).unwrap_or(SignedLogValue::ZERO);
                }
                let mut acc = LogAccumulator::new();
                // Order-m pole at the origin:
                // (−δ)^{−j} Σ_p C(j+p−1,p) δ^{−p} g_{m−1−p}(x).
                let lead = signed_pow(-delta, -(j as i64));
                for p in 0..m {
                    acc.push(lead * multiset(j, p) * signed_pow(delta, -(p as i64)) * g[m - 1 - p]);
                }
                // Order-j pole at z = δ:
                // e^{−xδ} b̃^A δ^{−m} Σ_{i+q=j−1} b̃^{−i} g_i(x b̃) C(m+q−1,q) (−1/δ)^q.
                let prefactor = signed_pow(delta, -(m as i64)).scale_log(-x * delta + big_a * bt.ln());
                for i in 0..j {
                    let q = j - 1 - i;
                    acc.push(
                        prefactor
                            * multiset(m, q)
                            * signed_pow(-1.0 / delta, q as i64)
                            * g_scaled[i].scale_log(-(i as f64) * bt.ln()),
                    );
                }
                best_of(acc.finish(), series)
            })
            .collect()
    }

    fn tilde(&self, x: f64) -> Vec<SignedLogValue> {
        let x = x.max(TINY);
        let gauge = log_pow(x, 0.5 * self.base_parameter()) - 0.5 * x;
        self.tilde_raw(x).into_iter().map(|v| v.scale_log(gauge)).collect()
    }

    /// Λ⁽ʲ⁾(y) y^{−a/2} e^{y/2}:
    /// Σ_l C(j−1,l) (−δ)^{j−1−l} ((m−r+l)!/Γ(m+α))^{1/2} φ^{a_l}_{m−r+l}(y) y^{−(1+l)/2},
    /// a_l = α + r − 1 − l.
    fn plain(&self, y: f64) -> Result<Vec<SignedLogValue>> {
        let y = y.max(TINY);
        let delta = self.btilde - 1.0;
        let a = self.base_parameter();
        let log_gamma_a = ln_gamma(self.big_a());
        let mut phis = Vec::with_capacity(self.rank);
        for l in 0..self.rank {
            let n = self.base + l;
            let a_l = a - 1.0 - l as f64;
            let phi = laguerre_weighted_log(n + 1, a_l, y)?[n];
            phis.push(phi.scale_log(0.5 * (ln_factorial(n) - log_gamma_a) - 0.5 * (1.0 + l as f64) * y.ln()));
        }
        Ok((1..=self.rank)
            .map(|j| {
                let terms: Vec<SignedLogValue> =
                    (0..j).map(|l| signed_pow(-delta, (j - 1 - l) as i64) * binomial(j - 1, l) * phis[l]).collect();
                SignedLogValue::sum_slice(&terms)
            })
            .collect())
    }

    fn spike(&self, x: f64, y: f64) -> Result<SignedLogValue> {
        let tilde = self.tilde(x);
        let plain = self.plain(y)?;
        let terms: Vec<SignedLogValue> = tilde.iter().zip(&plain).map(|(a, b)| *a * *b).collect();
        Ok(SignedLogValue::sum_slice(&terms))
    }

    fn kernel(&self, x: f64, y: f64) -> Result<f64> {
        if x < 0.0 || y < 0.0 {
            return Err(domain(format!("spiked LUE kernel needs x, y >= 0 (got {x}, {y})")));
        }
        let base = if self.base > 0 { kernel_laguerre(self.base, self.base_parameter(), x, y)? } else { 0.0 };
        let spike = if self.rank > 0 { self.spike(x, y)?.to_f64() } else { 0.0 };
        Ok(base + spike)
    }
}

/// Λ̃⁽ʲ⁾(x) (`Tilde`) or Λ⁽ʲ⁾(x) (`Plain`) of a spiked LUE, in their
/// defining normalization (Λ carries the weight x^{a_l} e^{−x}).
pub fn incomplete_laguerre(kind: IncompleteKind, j: usize, x: f64, model: &KernelModel) -> Result<SignedLogValue> {
    let spike = LaguerreSpike::new(model)?;
    if j == 0 || j > spike.rank {
        return Err(domain(format!("index j = {j} outside 1..={}", spike.rank)));
    }
    if x < 0.0 {
        return Err(domain(format!("incomplete Laguerre functions need x >= 0, got {x}")));
    }
    let a = spike.base_parameter();
    Ok(match kind {
        IncompleteKind::Tilde => spike.tilde_raw(x)[j - 1],
        IncompleteKind::Plain => {
            let xs = x.max(TINY);
            spike.plain(x)?[j - 1].scale_log(log_pow(xs, 0.5 * a) - 0.5 * xs)
        }
    })
}

/// Correlation kernel of the spiked LUE (symmetric gauge, parameter α + r).
pub fn kernel_spiked_lue(model: &KernelModel, x: f64, y: f64) -> Result<f64> {
    LaguerreSpike::new(model)?.kernel(x, y)
}

/// Eigenvalue density of the spiked LUE (integrates to m).
pub fn density_spiked_lue(model: &KernelModel, x: f64) -> Result<f64> {
    Ok(kernel_spiked_lue(model, x, x)?.max(0.0))
}
