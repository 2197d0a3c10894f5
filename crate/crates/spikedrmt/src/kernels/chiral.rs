//! Chiral (singular-value) kernel with a finite-rank mean shift.
//!
//! The kernel lives in the Gram-eigenvalue variable x = λ²; the public
//! kernel/density functions take the positive eigenvalues λ of the block
//! matrix and include the change of variables.

use super::gaussian::{multiset, pair_sum};
use super::{best_of, log_pow, parity, signed_pow, sum_series, KernelModel, LogAccumulator, SERIES_TERMS};
use crate::error::{domain, Error, Result};
use crate::specialfn::{
    bessel_i_scaled_log, binomial, hermite_weighted_log, laguerre_weighted_log, ln_factorial, ln_gamma, SignedLogValue,
};

/// Member of the chiral biorthogonal pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiralKind {
    /// The polynomial member p_k.
    P,
    /// The contour-integral member q_k (carries the weight x^α e^{−x}).
    Q,
}

const TINY: f64 = f64::MIN_POSITIVE;

/// p/q functions of a shifted chiral ensemble in the symmetric gauge of the
/// base kernel K^α_{m−r}: `p_sym(x) = p(x) x^{α/2} e^{−x/2}`,
/// `q_sym(y) = q(y) y^{−α/2} e^{y/2}`.
struct ChiralSpike {
    base: usize,
    rank: usize,
    alpha: f64,
    c: f64,
}

impl ChiralSpike {
    fn new(model: &KernelModel) -> Result<Self> {
        model.validate()?;
        match *model {
            KernelModel::ShiftedChiral { m, alpha, r, c } => Ok(Self { base: m - r, rank: r, alpha, c }),
            _ => Err(Error::Config("expected a ShiftedChiral model".into())),
        }
    }

    /// ln (n! Γ(n+α+1))^{1/2}: converts φ_n^α into x^{α/2}e^{−x/2} n! L_n^α / … .
    fn log_norm(&self, n: usize) -> f64 {
        0.5 * (ln_factorial(n) + ln_gamma(n as f64 + self.alpha + 1.0))
    }

    fn phi(&self, len: usize, x: f64) -> Result<Vec<SignedLogValue>> {
        laguerre_weighted_log(len, self.alpha, x.max(TINY))
    }

    /// p_k(x) x^{α/2} e^{−x/2} = Σ_l C(k−1,l) c^{2(k−1−l)} (n! Γ(n+α+1))^{1/2} φ_n(x), n = m−r+l.
    fn p_sym(&self, phi: &[SignedLogValue]) -> Vec<SignedLogValue> {
        let c2 = self.c * self.c;
        (1..=self.rank)
            .map(|k| {
                let terms: Vec<SignedLogValue> = (0..k)
                    .map(|l| {
                        let n = self.base + l;
                        signed_pow(c2, (k - 1 - l) as i64) * binomial(k - 1, l) * phi[n].scale_log(self.log_norm(n))
                    })
                    .collect();
                SignedLogValue::sum_slice(&terms)
            })
            .collect()
    }

    /// q_k(y) y^{−α/2} e^{y/2} for k = 1..=r, given φ_0(y), φ_1(y), … long
    /// enough for the merged-pole series.
    fn q_sym(&self, y: f64, phi: &[SignedLogValue]) -> Result<Vec<SignedLogValue>> {
        let y = y.max(TINY);
        let (m, c, alpha) = (self.base, self.c, self.alpha);
        let c2 = c * c;
        // y^{α/2} e^{−y/2} L_n^α(y) / Γ(n+α+1) = φ_n(y) (n! Γ(n+α+1))^{−1/2}.
        let reduced = |n: usize| phi[n].scale_log(-self.log_norm(n));
        // Bessel factors y^{n/2} c^{−n} I_{α+n}(2c√y) / n! for n < r.
        let bessel: Vec<SignedLogValue> = if c > 0.0 {
            let z = 2.0 * c * y.sqrt();
            (0..self.rank)
                .map(|n| {
                    let log_i = bessel_i_scaled_log(alpha + n as f64, z)? + z;
                    Ok(SignedLogValue::from_log(
                        log_i + log_pow(y, 0.5 * n as f64) - n as f64 * c.ln() - ln_factorial(n),
                    ))
                })
                .collect::<Result<_>>()?
        } else {
            Vec::new()
        };
        Ok((1..=self.rank)
            .map(|k| {
                // Σ_q (−1)^q C(k+q−1,q) c^{2q} reduced(m+k−1+q).
                let series =
                    sum_series(SERIES_TERMS, |q| signed_pow(-c2, q as i64) * multiset(k, q) * reduced(m + k - 1 + q));
                if c == 0.0 {
                    return series.map(|s| s.value).unwrap_or(SignedLogValue::ZERO);
                }
                let mut acc = LogAccumulator::new();
                // Order-(m−r) pole at v = 0.
                for p in 0..m {
                    acc.push(parity(p) * multiset(k, p) * signed_pow(c, -2 * (k + p) as i64) * reduced(m - 1 - p));
                }
                // Order-k pole at v = −c²:
                // e^{−c²−y/2} (−c²)^{−m} c^{−α} Σ_{a+b+n=k−1} C(m+b−1,b) c^{−2b} (−1)^n / a! · bessel_n.
                let prefactor = signed_pow(-c2, -(m as i64)).scale_log(-c2 - 0.5 * y - alpha * c.ln());
                for n in 0..k {
                    for b in 0..k - n {
                        let a = k - 1 - n - b;
                        acc.push(
                            prefactor
                                * multiset(m, b)
                                * signed_pow(c, -2 * b as i64)
                                * parity(n)
                                * bessel[n].scale_log(-ln_factorial(a)),
                        );
                    }
                }
                best_of(acc.finish(), series)
            })
            .collect())
    }

    fn series_len(&self) -> usize {
        self.base + self.rank + SERIES_TERMS
    }

    /// Spike part Σ p_k(x) q_k(y) in the symmetric gauge (Gram variables).
    fn spike(&self, x: f64, y: f64) -> Result<SignedLogValue> {
        let phi_x = self.phi(self.base + self.rank, x)?;
        let phi_y = self.phi(self.series_len(), y)?;
        let p = self.p_sym(&phi_x);
        let q = self.q_sym(y, &phi_y)?;
        let terms: Vec<SignedLogValue> = p.iter().zip(&q).map(|(a, b)| *a * *b).collect();
        Ok(SignedLogValue::sum_slice(&terms))
    }

    /// Full kernel in Gram variables (symmetric gauge).
    fn gram_kernel(&self, x: f64, y: f64) -> Result<f64> {
        let base = if self.base > 0 {
            let px = self.phi(self.base, x)?;
            let py = self.phi(self.base, y)?;
            pair_sum(&px, &py, self.base)
        } else {
            0.0
        };
        let spike = if self.rank > 0 { self.spike(x, y)?.to_f64() } else { 0.0 };
        Ok(base + spike)
    }
}

/// p_k(x) or q_k(x) (Gram variable x ≥ 0) in their defining normalization.
pub fn chiral_pq(kind: ChiralKind, k: usize, x: f64, model: &KernelModel) -> Result<SignedLogValue> {
    let spike = ChiralSpike::new(model)?;
    if k == 0 || k > spike.rank {
        return Err(domain(format!("index k = {k} outside 1..={}", spike.rank)));
    }
    if x < 0.0 {
        return Err(domain(format!("chiral p/q functions need x >= 0, got {x}")));
    }
    let xs = x.max(TINY);
    let gauge = log_pow(xs, 0.5 * spike.alpha) - 0.5 * xs;
    Ok(match kind {
        ChiralKind::P => {
            let phi = spike.phi(spike.base + spike.rank, x)?;
            spike.p_sym(&phi)[k - 1].scale_log(-gauge)
        }
        ChiralKind::Q => {
            let phi = spike.phi(spike.series_len(), x)?;
            spike.q_sym(x, &phi)?[k - 1].scale_log(gauge)
        }
    })
}

/// Kernel K_m(λ², μ²) of the shifted chiral ensemble at positive
/// eigenvalues λ, μ (symmetric gauge).
pub fn kernel_shifted_chiral(model: &KernelModel, lambda: f64, mu: f64) -> Result<f64> {
    if lambda < 0.0 || mu < 0.0 {
        return Err(domain(format!("chiral kernel needs nonnegative arguments (got {lambda}, {mu})")));
    }
    ChiralSpike::new(model)?.gram_kernel(lambda * lambda, mu * mu)
}

/// Density of the positive eigenvalues, ρ(λ) = 2λ K_m(λ², λ²)
/// (integrates to m over λ > 0).
pub fn density_shifted_chiral(model: &KernelModel, lambda: f64) -> Result<f64> {
    Ok((2.0 * lambda * kernel_shifted_chiral(model, lambda, lambda)?).max(0.0))
}

/// The rank-r correction Σ_i p_i(x) q_i(y) in its defining gauge, at Gram
/// variables x, y.
pub fn chiral_spike_term(model: &KernelModel, x: f64, y: f64) -> Result<f64> {
    let spike = ChiralSpike::new(model)?;
    if x < 0.0 || y < 0.0 {
        return Err(domain("chiral spike term needs x, y >= 0"));
    }
    let (xs, ys) = (x.max(TINY), y.max(TINY));
    let half_alpha = 0.5 * spike.alpha;
    let conj = log_pow(ys, half_alpha) - log_pow(xs, half_alpha) + 0.5 * (xs - ys);
    Ok(spike.spike(x, y)?.scale_log(conj).to_f64())
}

/// Large-shift form of Σ_i p_i(x) q_i(y):
/// e^{−(√y−c)²/2 + (√x−c)²/2} K_r^GUE(√x−c, √y−c) / (2c).
pub fn chiral_asymptotic_pq(r: usize, c: f64, x: f64, y: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(domain(format!("asymptotic form needs c > 0, got {c}")));
    }
    if x <= 0.0 || y <= 0.0 {
        return Err(domain("asymptotic form needs x, y > 0"));
    }
    if r == 0 {
        return Ok(0.0);
    }
    let (u, v) = (x.sqrt() - c, y.sqrt() - c);
    let pu = hermite_weighted_log(r, u)?;
    let pv = hermite_weighted_log(r, v)?;
    let terms: Vec<SignedLogValue> = pu.iter().zip(&pv).map(|(a, b)| *a * *b).collect();
    Ok(SignedLogValue::sum_slice(&terms).scale_log(0.5 * (u * u - v * v) - (2.0 * c).ln()).to_f64())
}
