//! Seeded samplers for the shifted Gaussian, spiked Wishart and shifted
//! chiral ensembles at β = 1 and β = 2.
//!
//! Entry variances follow from the weights `exp(−(β/2) Tr G²)` and
//! `exp(−(β/2) Tr Y†Y)`:
//!
//! * Gaussian, β = 1: `G_jj ~ N(0, 1)`, `G_jk ~ N(0, 1/2)`;
//!   β = 2: `G_jj ~ N(0, 1/2)`, `G_jk` complex with `E|G_jk|² = 1/2`
//!   (real and imaginary parts N(0, 1/4)). With these the bulk edge is
//!   `J = √(2N)` for both β (checked by the edge Monte Carlo tests).
//! * Wishart/chiral, β = 1: `Y_jk ~ N(0, 1)`; β = 2: complex with
//!   `E|Y_jk|² = 1`. Then `Y†Y/m` has Marchenko–Pastur support (0, 4) when
//!   n − m is fixed, i.e. the unscaled bulk is (0, 4m).

mod eigen;
mod rng;

pub use eigen::{complex_gram, hermitian_eigenvalues, symmetric_eigen, symmetric_eigenvalues};
pub use rng::{GaussianSource, SeedStream};

use crate::error::{domain, Error, Result};
use crate::secular::{Beta, SpikeModel};
use nalgebra::{Complex, DMatrix};
use rayon::prelude::*;

/// One sampled spectrum with provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSample {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    pub model: SpikeModel,
    pub seed: u64,
    pub trial_index: u64,
}

impl SpectrumSample {
    pub fn largest(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }
}

/// How the rank-r mean shift of the Gaussian model is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftRealization {
    /// `H⁽⁰⁾ = diag(0^{N−r}, spikes)`.
    Diagonal,
    /// `H⁽⁰⁾ = Q diag(…) Q†` with Q Haar orthogonal/unitary (drawn from the
    /// same trial stream after G).
    Rotated,
}

fn gaussian_matrix_real(g: &mut GaussianSource, n: usize, diag_var: f64, off_var: f64) -> DMatrix<f64> {
    let mut a = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        a[(j, j)] = g.normal(diag_var);
        for k in j + 1..n {
            let x = g.normal(off_var);
            a[(j, k)] = x;
            a[(k, j)] = x;
        }
    }
    a
}

fn gaussian_matrix_complex(g: &mut GaussianSource, n: usize) -> DMatrix<Complex<f64>> {
    let mut a = DMatrix::<Complex<f64>>::zeros(n, n);
    for j in 0..n {
        a[(j, j)] = Complex::new(g.normal(0.5), 0.0);
        for k in j + 1..n {
            let z = Complex::new(g.normal(0.25), g.normal(0.25));
            a[(j, k)] = z;
            a[(k, j)] = z.conj();
        }
    }
    a
}

/// Columns of a Haar-distributed orthogonal (β=1) or unitary (β=2) matrix
/// from the QR decomposition of a Gaussian matrix with the phase fix
/// `Q ↦ Q diag(R_jj/|R_jj|)`.
fn haar_complex(g: &mut GaussianSource, n: usize, beta: Beta) -> DMatrix<Complex<f64>> {
    let z = DMatrix::<Complex<f64>>::from_fn(n, n, |_, _| match beta {
        Beta::Real => Complex::new(g.standard(), 0.0),
        Beta::Complex => Complex::new(g.standard(), g.standard()),
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Eigenvalues of `G + H⁽⁰⁾` where H⁽⁰⁾ has the nonzero eigenvalues
/// `spike_values` (length r of the model).
pub fn sample_shifted_gaussian(
    model: &SpikeModel,
    spike_values: &[f64],
    stream: &SeedStream,
    trial: u64,
) -> Result<SpectrumSample> {
    sample_shifted_gaussian_with(model, spike_values, stream, trial, ShiftRealization::Diagonal)
}

/// As [`sample_shifted_gaussian`] with an explicit realization of H⁽⁰⁾.
pub fn sample_shifted_gaussian_with(
    model: &SpikeModel,
    spike_values: &[f64],
    stream: &SeedStream,
    trial: u64,
    realization: ShiftRealization,
) -> Result<SpectrumSample> {
    let SpikeModel::GaussianShift { beta, n, r, .. } = *model else {
        return Err(Error::Config("sample_shifted_gaussian needs a GaussianShift model".into()));
    };
    if r > n {
        return Err(Error::Dimension(format!("rank r = {r} exceeds N = {n}")));
    }
    if spike_values.len() != r {
        return Err(Error::Dimension(format!("expected {r} spike values, got {}", spike_values.len())));
    }
    let mut g = stream.gaussians(trial);
    let eigenvalues = match beta {
        Beta::Real => {
            let mut a = gaussian_matrix_real(&mut g, n, 1.0, 0.5);
            match realization {
                ShiftRealization::Diagonal => {
                    for (k, &v) in spike_values.iter().enumerate() {
                        a[(n - r + k, n - r + k)] += v;
                    }
                }
                ShiftRealization::Rotated => {
                    let q = haar_complex(&mut g, n, Beta::Real).map(|z| z.re);
                    let mut d = DMatrix::<f64>::zeros(n, n);
                    for (k, &v) in spike_values.iter().enumerate() {
                        d[(n - r + k, n - r + k)] = v;
                    }
                    a += &q * d * q.transpose();
                    a = (&a + a.transpose()) * 0.5;
                }
            }
            symmetric_eigenvalues(a)
        }
        Beta::Complex => {
            let mut a = gaussian_matrix_complex(&mut g, n);
            match realization {
                ShiftRealization::Diagonal => {
                    for (k, &v) in spike_values.iter().enumerate() {
                        a[(n - r + k, n - r + k)] += Complex::new(v, 0.0);
                    }
                }
                ShiftRealization::Rotated => {
                    let q = haar_complex(&mut g, n, Beta::Complex);
                    let mut d = DMatrix::<Complex<f64>>::zeros(n, n);
                    for (k, &v) in spike_values.iter().enumerate() {
                        d[(n - r + k, n - r + k)] = Complex::new(v, 0.0);
                    }
                    a += &q * d * q.adjoint();
                    a = (&a + a.adjoint()) * Complex::new(0.5, 0.0);
                }
            }
            hermitian_eigenvalues(a)
        }
    };
    Ok(SpectrumSample { eigenvalues, model: *model, seed: stream.master_seed, trial_index: trial })
}

/// Gram matrix of the n×m data matrix Y (plus an optional diagonal shift
/// `offsets` on Y_jj, and column scales) as a Hermitian eigenproblem.
fn gram_eigenvalues(
    g: &mut GaussianSource,
    beta: Beta,
    n: usize,
    m: usize,
    column_scale: &[f64],
    diagonal_shift: &[f64],
) -> Vec<f64> {
    match beta {
        Beta::Real => {
            let mut y = DMatrix::<f64>::from_fn(n, m, |_, _| 0.0);
            // Fill column-major in a fixed order for reproducibility.
            for k in 0..m {
                for j in 0..n {
                    y[(j, k)] = g.standard();
                }
            }
            for (k, &s) in diagonal_shift.iter().enumerate() {
                y[(k, k)] += s;
            }
            for (k, &s) in column_scale.iter().enumerate() {
                y.column_mut(k).scale_mut(s);
            }
            symmetric_eigenvalues(y.tr_mul(&y))
        }
        Beta::Complex => {
            let mut re = DMatrix::<f64>::zeros(n, m);
            let mut im = DMatrix::<f64>::zeros(n, m);
            for k in 0..m {
                for j in 0..n {
                    re[(j, k)] = g.normal(0.5);
                    im[(j, k)] = g.normal(0.5);
                }
            }
            for (k, &s) in diagonal_shift.iter().enumerate() {
                re[(k, k)] += s;
            }
            for (k, &s) in column_scale.iter().enumerate() {
                re.column_mut(k).scale_mut(s);
                im.column_mut(k).scale_mut(s);
            }
            hermitian_eigenvalues(complex_gram(&re, &im))
        }
    }
}

/// Eigenvalues of `Σ^{1/2} Y†Y Σ^{1/2}` with Σ = diag(sʳ, 1^{m−r}).
pub fn sample_spiked_wishart(model: &SpikeModel, stream: &SeedStream, trial: u64) -> Result<SpectrumSample> {
    let (beta, m, s, r) = match *model {
        SpikeModel::WishartSpike { beta, m, s, r, .. } | SpikeModel::WishartSpikeGamma { beta, m, s, r, .. } => {
            (beta, m, s, r)
        }
        _ => return Err(Error::Config("sample_spiked_wishart needs a Wishart model".into())),
    };
    if !(s > 0.0) {
        return Err(domain(format!("spike eigenvalue s = {s} must be positive")));
    }
    model.validate()?;
    let n = model.samples().expect("Wishart models have a sample count");
    let scale: Vec<f64> = (0..r).map(|_| s.sqrt()).collect();
    let mut g = stream.gaussians(trial);
    let mut eigenvalues = gram_eigenvalues(&mut g, beta, n, m, &scale, &[]);
    // Gram matrices are positive semidefinite; clamp roundoff below zero.
    eigenvalues.iter_mut().for_each(|x| *x = x.max(0.0));
    Ok(SpectrumSample { eigenvalues, model: *model, seed: stream.master_seed, trial_index: trial })
}

/// Full spectrum (ascending, length n + m) of the chiral block matrix built
/// from `X + X⁽⁰⁾` with `(X⁽⁰⁾)_jj = spike_singulars_j` for j ≤ r.
pub fn sample_shifted_chiral(
    model: &SpikeModel,
    spike_singulars: &[f64],
    stream: &SeedStream,
    trial: u64,
) -> Result<SpectrumSample> {
    let SpikeModel::ChiralShift { beta, m, n, r, .. } = *model else {
        return Err(Error::Config("sample_shifted_chiral needs a ChiralShift model".into()));
    };
    if r > m {
        return Err(Error::Dimension(format!("rank r = {r} exceeds m = {m}")));
    }
    if spike_singulars.len() != r {
        return Err(Error::Dimension(format!("expected {r} spike singular values, got {}", spike_singulars.len())));
    }
    model.validate()?;
    let mut g = stream.gaussians(trial);
    let gram = gram_eigenvalues(&mut g, beta, n, m, &[], spike_singulars);
    let positive: Vec<f64> = gram.iter().map(|x| x.max(0.0).sqrt()).collect();
    let mut eigenvalues: Vec<f64> = positive.iter().map(|x| -x).collect();
    eigenvalues.extend(std::iter::repeat_n(0.0, n - m));
    eigenvalues.extend(positive.iter().copied());
    eigenvalues.sort_by(f64::total_cmp);
    Ok(SpectrumSample { eigenvalues, model: *model, seed: stream.master_seed, trial_index: trial })
}

/// Runs `trials` independent draws in parallel and returns them ordered by
/// trial index (so results never depend on the worker count).
pub fn sample_many<F>(trials: u64, draw: F) -> Result<Vec<SpectrumSample>>
where
    F: Fn(u64) -> Result<SpectrumSample> + Sync + Send,
{
    (0..trials).into_par_iter().map(draw).collect()
}

/// Draws one sample of any [`SpikeModel`] with its default spike placement:
/// Gaussian shift eigenvalues `c·J/2`, chiral singular values `c·J/2`.
pub fn sample_model(model: &SpikeModel, stream: &SeedStream, trial: u64) -> Result<SpectrumSample> {
    match *model {
        SpikeModel::GaussianShift { n, c, r, .. } => {
            let value = 0.5 * c * (2.0 * n as f64).sqrt();
            sample_shifted_gaussian(model, &vec![value; r], stream, trial)
        }
        SpikeModel::ChiralShift { m, c, r, .. } => {
            let value = c * (m as f64).sqrt();
            sample_shifted_chiral(model, &vec![value; r], stream, trial)
        }
        _ => sample_spiked_wishart(model, stream, trial),
    }
}
