//! The verification suite: oracle cross-checks for every module, run as a
//! flat list of named checks with a machine-readable report.

use super::oracles::{
    contour_integral, cpow, dense_rank_one_eigenvalues, hyp0f1_complex, hypergeometric_series,
    ornstein_uhlenbeck_kernel, C64,
};
use crate::ensembles::{sample_many, sample_shifted_chiral, sample_spiked_wishart, SeedStream};
use crate::error::{Error, Result};
use crate::jointpdf::{f00_unitary, f01_unitary, green_function, EigenConfiguration, GreenFamily};
use crate::kernels::{chiral_pq, incomplete_hermite, incomplete_laguerre, ChiralKind, IncompleteKind, KernelModel};
use crate::quadrature::{integrate_adaptive, linspace, trapezoid, GaussRule};
use crate::secular::{secular_eigenvalues, Beta, SecularProblem, SpikeModel};
use crate::specialfn::{
    catalan, hermite_weighted, hyp0f1_log, hyp0f1_series, laguerre_weighted, ln_gamma, narayana,
    narayana_generating_closed, narayana_polynomial,
};
use crate::spectra::LimitLaw;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

/// A group of checks (one per library module).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Specialfn,
    Spectra,
    Secular,
    Ensembles,
    Kernels,
    Jointpdf,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Specialfn => "specialfn",
            Suite::Spectra => "spectra",
            Suite::Secular => "secular",
            Suite::Ensembles => "ensembles",
            Suite::Kernels => "kernels",
            Suite::Jointpdf => "jointpdf",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        [
            Suite::All,
            Suite::Specialfn,
            Suite::Spectra,
            Suite::Secular,
            Suite::Ensembles,
            Suite::Kernels,
            Suite::Jointpdf,
        ]
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::Config(format!("unknown verification suite {name:?}")))
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Specialfn,
                Suite::Spectra,
                Suite::Secular,
                Suite::Ensembles,
                Suite::Kernels,
                Suite::Jointpdf,
            ],
            one => vec![one],
        }
    }
}

/// Deliberate faults used to show that the suite detects errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Negate the first incomplete Hermite function Γ⁽¹⁾ before it is
    /// compared with its contour oracle.
    FlipIncompleteHermitePlainSign,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyOptions {
    pub mutations: Vec<Mutation>,
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Largest observed error (in the check's own measure).
    pub error: f64,
    pub tolerance: f64,
    pub seconds: f64,
    /// Set when the check could not run (library error).
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// CSV: `suite,check,status,error,tolerance,seconds,message`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,status,error,tolerance,seconds,message\n");
        for c in &self.checks {
            let message = c.failure.as_deref().unwrap_or("").replace([',', '\n'], ";");
            let _ = writeln!(
                out,
                "{},{},{},{:e},{:e},{:.3},{}",
                c.suite.name(),
                c.name,
                if c.passed { "pass" } else { "fail" },
                c.error,
                c.tolerance,
                c.seconds,
                message
            );
        }
        out
    }
}

pub fn run_verify(suite: Suite) -> VerifyReport {
    run_verify_with(suite, &VerifyOptions::default())
}

pub fn run_verify_with(suite: Suite, options: &VerifyOptions) -> VerifyReport {
    let mut checks = Vec::new();
    for member in suite.members() {
        for (name, tolerance, check) in checks_for(member) {
            let start = Instant::now();
            let outcome = check(options);
            let seconds = start.elapsed().as_secs_f64();
            let (error, failure) = match outcome {
                Ok(e) => (e, None),
                Err(err) => (f64::INFINITY, Some(err.to_string())),
            };
            checks.push(CheckOutcome {
                suite: member,
                name: name.to_string(),
                passed: error.is_finite() && error < tolerance,
                error,
                tolerance,
                seconds,
                failure,
            });
        }
    }
    VerifyReport { suite, checks }
}

type Check = fn(&VerifyOptions) -> Result<f64>;

fn checks_for(suite: Suite) -> Vec<(&'static str, f64, Check)> {
    match suite {
        Suite::All => Vec::new(),
        Suite::Specialfn => vec![
            ("hermite_orthonormality", 1e-8, hermite_orthonormality as Check),
            ("laguerre_orthonormality", 1e-8, laguerre_orthonormality),
            ("narayana_rows_sum_to_catalan", 0.5, narayana_rows),
            ("hyp0f1_log_vs_series", 1e-12, hyp0f1_against_series),
        ],
        Suite::Spectra => vec![
            ("stieltjes_vs_quadrature", 1e-10, stieltjes_vs_quadrature as Check),
            ("moments_vs_quadrature", 1e-8, moments_vs_quadrature),
            ("catalan_narayana_moments", 1e-8, combinatorial_moments),
        ],
        Suite::Secular => vec![("secular_vs_dense_200_instances", 1e-9, secular_vs_dense as Check)],
        Suite::Ensembles => vec![
            ("chiral_plus_minus_structure", 1e-8, chiral_structure as Check),
            ("seeded_determinism_across_workers", 0.5, worker_determinism),
        ],
        Suite::Kernels => vec![
            ("incomplete_hermite_tilde_vs_contour", 1e-8, hermite_tilde_contour as Check),
            ("incomplete_hermite_plain_vs_contour", 1e-8, hermite_plain_contour),
            ("incomplete_laguerre_tilde_vs_contour", 1e-8, laguerre_tilde_contour),
            ("incomplete_laguerre_plain_vs_contour", 1e-8, laguerre_plain_contour),
            ("chiral_q_vs_contour", 1e-8, chiral_q_contour),
            ("trace_equals_dimension", 1e-6, kernel_traces),
            ("projection_property", 1e-6, kernel_projections),
            ("biorthogonality", 1e-6, kernel_biorthogonality),
        ],
        Suite::Jointpdf => vec![
            ("f00_determinant_vs_series", 1e-8, f00_vs_series as Check),
            ("f01_determinant_vs_series", 1e-8, f01_vs_series),
            ("green_n1_vs_ornstein_uhlenbeck", 1e-10, green_single_particle),
        ],
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

// ------------------------------------------------------------- specialfn

fn gram_error(table: &[Vec<f64>], weights: &[f64]) -> f64 {
    let size = table[0].len();
    let mut worst: f64 = 0.0;
    for i in 0..size {
        for j in 0..size {
            let v: f64 = table.iter().zip(weights).map(|(row, w)| w * row[i] * row[j]).sum();
            worst = worst.max((v - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    worst
}

fn hermite_orthonormality(_: &VerifyOptions) -> Result<f64> {
    let rule = GaussRule::new(200, -14.0, 14.0);
    let table = rule.nodes.iter().map(|&x| hermite_weighted(20, x)).collect::<Result<Vec<_>>>()?;
    Ok(gram_error(&table, &rule.weights))
}

fn laguerre_orthonormality(_: &VerifyOptions) -> Result<f64> {
    let rule = GaussRule::new(200, 0.0, 12.0);
    let weights: Vec<f64> = rule.nodes.iter().zip(&rule.weights).map(|(u, w)| 2.0 * u * w).collect();
    let mut worst: f64 = 0.0;
    for a in [0.0, 0.5, 3.0] {
        let table = rule.nodes.iter().map(|&u| laguerre_weighted(20, a, u * u)).collect::<Result<Vec<_>>>()?;
        worst = worst.max(gram_error(&table, &weights));
    }
    Ok(worst)
}

/// Number of k ≤ 12 whose Narayana row does not sum to the Catalan number.
fn narayana_rows(_: &VerifyOptions) -> Result<f64> {
    let mut mismatches = 0;
    for k in 1..=12u64 {
        let row: u128 = (0..k).map(|j| narayana(k, j)).sum::<Result<u128>>()?;
        if row != catalan(k)? {
            mismatches += 1;
        }
    }
    Ok(mismatches as f64)
}

fn hyp0f1_against_series(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in [0.5, 1.0, 3.5] {
        for z in [0.0, 0.3, 0.7, 5.0, 20.0, 80.0] {
            worst = worst.max(rel(hyp0f1_log(b, z)?.to_f64(), hyp0f1_series(b, z, 200)));
        }
    }
    Ok(worst)
}

// --------------------------------------------------------------- spectra

fn limit_laws() -> Vec<LimitLaw> {
    vec![
        LimitLaw::Semicircle { n: 1 },
        LimitLaw::Semicircle { n: 15 },
        LimitLaw::MarchenkoPasturFixedDiff { m: 1 },
        LimitLaw::MarchenkoPasturFixedDiff { m: 40 },
        LimitLaw::MarchenkoPasturGamma { gamma: 1.0 },
        LimitLaw::MarchenkoPasturGamma { gamma: 3.7 },
    ]
}

/// ∫ f ρ over the continuous support with a cosine substitution.
fn integrate_against_law(law: &LimitLaw, f: impl Fn(f64) -> f64) -> f64 {
    let (lo, hi) = law.support();
    integrate_adaptive(
        |theta: f64| {
            let x = lo + (hi - lo) * (theta / 2.0).sin().powi(2);
            f(x) * law.density(x) * (hi - lo) * theta.sin() / 2.0
        },
        0.0,
        PI,
        1e-14,
        0.0,
    )
}

fn stieltjes_vs_quadrature(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for law in limit_laws() {
        for factor in [1.05, 1.5, 3.0] {
            let z = factor * law.upper_edge();
            let quad = integrate_against_law(&law, |x| 1.0 / (z - x)) + law.point_mass() / z;
            worst = worst.max(rel(law.stieltjes(z)?, quad));
        }
    }
    Ok(worst)
}

fn moments_vs_quadrature(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for law in limit_laws() {
        let scale = if let LimitLaw::MarchenkoPasturGamma { gamma } = law { gamma } else { 1.0 };
        for k in 0..=8 {
            let quad = scale * integrate_against_law(&law, |x| x.powi(k as i32));
            let m = law.moment(k)?;
            worst = worst.max((quad - m).abs() / m.abs().max(law.upper_edge().powi(k as i32)));
        }
    }
    Ok(worst)
}

/// Catalan and Narayana identities against quadrature, independent of
/// [`LimitLaw::moment`]: the unit-radius-2 semicircle has m_{2k} = C_k, the
/// normalized MP-γ law has m_k = Σ_i N(k, i−1) γⁱ, and the Narayana
/// generating function matches its series.
fn combinatorial_moments(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    // n = 2 gives radius J = 2 and mass 2.
    let semicircle = LimitLaw::Semicircle { n: 2 };
    for k in 1..=4u64 {
        let quad = 0.5 * integrate_against_law(&semicircle, |x| x.powi(2 * k as i32));
        worst = worst.max(rel(quad, catalan(k)? as f64));
    }
    let gamma = 2.5;
    let mp = LimitLaw::MarchenkoPasturGamma { gamma };
    for k in 1..=8u64 {
        let quad = gamma * integrate_against_law(&mp, |x| x.powi(k as i32));
        worst = worst.max(rel(quad, narayana_polynomial(k, gamma, 1.0)?));
    }
    let (p, q, t) = (1.3, 0.7, 0.05f64);
    let series: f64 = (1..=60u64).map(|k| Ok(narayana_polynomial(k, p, q)? * t.powi(k as i32))).sum::<Result<f64>>()?;
    worst = worst.max(rel(series, narayana_generating_closed(p, q, t)));
    Ok(worst)
}

// --------------------------------------------------------------- secular

fn secular_vs_dense(_: &VerifyOptions) -> Result<f64> {
    let stream = SeedStream::new(2024);
    let mut worst: f64 = 0.0;
    for instance in 0..200u64 {
        let mut g = stream.gaussians(instance);
        let n = 1 + (g.uniform() * 50.0) as usize;
        let mu = [0.1, 1.0, 10.0][(instance % 3) as usize];
        let mut diag: Vec<f64> = (0..n).map(|_| 3.0 * g.standard()).collect();
        diag.sort_by(|a, b| b.total_cmp(a));
        let y: Vec<f64> = (0..n).map(|_| g.standard()).collect();
        let problem = SecularProblem { diag: diag.clone(), weights: y.iter().map(|v| v * v).collect(), coupling: mu };
        let roots = secular_eigenvalues(&problem, 1e-13)?;
        let oracle = dense_rank_one_eigenvalues(&diag, &y, mu);
        let scale = oracle.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        worst = worst.max(max_of(roots.iter().zip(&oracle).map(|(a, b)| (a - b).abs() / scale)));
    }
    Ok(worst)
}

// ------------------------------------------------------------- ensembles

/// Worst violation (relative to the spectral radius) of exact ± pairing
/// and of the n − m zero eigenvalues over 50 chiral trials.
fn chiral_structure(_: &VerifyOptions) -> Result<f64> {
    let (m, n) = (8usize, 11usize);
    let model = SpikeModel::ChiralShift { beta: Beta::Complex, m, n, c: 1.5, r: 2 };
    let stream = SeedStream::new(77);
    let samples = sample_many(50, |t| sample_shifted_chiral(&model, &[1.5 * (m as f64).sqrt(); 2], &stream, t))?;
    let mut worst: f64 = 0.0;
    for s in &samples {
        let ev = &s.eigenvalues;
        let radius = ev.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        for (a, b) in ev.iter().zip(ev.iter().rev()) {
            worst = worst.max((a + b).abs() / radius);
        }
        let mut magnitudes: Vec<f64> = ev.iter().map(|x| x.abs() / radius).collect();
        magnitudes.sort_by(f64::total_cmp);
        worst = worst.max(magnitudes[n - m - 1]);
    }
    Ok(worst)
}

/// 1 when samples drawn with 1 and 3 workers differ in any bit.
fn worker_determinism(_: &VerifyOptions) -> Result<f64> {
    let model = SpikeModel::WishartSpike { beta: Beta::Complex, m: 12, n: 15, s: 3.0, r: 1 };
    let stream = SeedStream::new(2718);
    let run = |threads: usize| -> Result<Vec<Vec<u64>>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        let samples = pool.install(|| sample_many(24, |t| sample_spiked_wishart(&model, &stream, t)))?;
        Ok(samples.iter().map(|s| s.eigenvalues.iter().map(|v| v.to_bits()).collect()).collect())
    };
    Ok(if run(1)? == run(3)? { 0.0 } else { 1.0 })
}

// --------------------------------------------------------------- kernels

fn hermite_tilde_contour(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (n, r, c) in [(3usize, 1usize, 0.3), (5, 2, 1.0), (8, 3, 2.0)] {
        let model = KernelModel::ShiftedGue { n, r, c };
        let zeros = (n - r) as i32;
        for x in [-1.2, 0.4, 1.9] {
            for j in 1..=r {
                let oracle = contour_integral(C64::new(0.0, 0.0), 2.0 * c + 2.0, |z| {
                    (-z * x - z * z / 4.0).exp() / (z.powi(zeros) * (z + 2.0 * c).powi(j as i32))
                });
                let got = incomplete_hermite(IncompleteKind::Tilde, j, x, &model)?.to_f64();
                worst = worst.max(rel(got, oracle));
            }
        }
    }
    Ok(worst)
}

/// Γ⁽ʲ⁾(y) = (1/2π) ∫ e^{iyt − t²/4} (it)^{N−r} (it + 2c)^{j−1} dt, the
/// contour taken along the imaginary axis.
fn hermite_plain_contour(options: &VerifyOptions) -> Result<f64> {
    let flip = options.mutations.contains(&Mutation::FlipIncompleteHermitePlainSign);
    let (n, r, c) = (7usize, 3usize, 1.4);
    let model = KernelModel::ShiftedGue { n, r, c };
    let ts = linspace(-60.0, 60.0, 24001);
    let mut worst: f64 = 0.0;
    for y in [-0.8, 0.5, 1.7] {
        for j in 1..=r {
            let integrand: Vec<f64> = ts
                .iter()
                .map(|&t| {
                    let w = C64::new(0.0, t);
                    ((w * y + w * w / 4.0).exp() * w.powi((n - r) as i32) * (w + 2.0 * c).powi(j as i32 - 1)).re
                })
                .collect();
            let oracle = trapezoid(&ts, &integrand) / (2.0 * PI);
            let mut got = incomplete_hermite(IncompleteKind::Plain, j, y, &model)?.to_f64();
            if flip && j == 1 {
                got = -got;
            }
            worst = worst.max((got - oracle).abs() / oracle.abs().max(1.0));
        }
    }
    Ok(worst)
}

fn laguerre_tilde_contour(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (m, alpha, r) in [(4usize, 0.5, 2usize), (6, 2.0, 3)] {
        for btilde in [0.4, 1.6] {
            let model = KernelModel::SpikedLue { m, alpha, r, btilde };
            let delta = btilde - 1.0;
            let center = C64::new(0.5 * delta, 0.0);
            let reach = 0.5 * delta.abs();
            let radius = reach + 0.5 * ((center.re + 1.0) - reach).min(1.0);
            for x in [0.3, 1.5, 4.0] {
                for j in 1..=r {
                    let oracle = contour_integral(center, radius, |z| {
                        (-z * x).exp() * cpow(z + 1.0, m as f64 + alpha)
                            / (z.powi((m - r) as i32) * (z - delta).powi(j as i32))
                    });
                    let got = incomplete_laguerre(IncompleteKind::Tilde, j, x, &model)?.to_f64();
                    worst = worst.max(rel(got, oracle));
                }
            }
        }
    }
    Ok(worst)
}

fn laguerre_plain_contour(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (m, alpha, r, btilde) in [(5usize, 1.0, 1usize, 0.5), (6, 2.0, 3, 0.4)] {
        let model = KernelModel::SpikedLue { m, alpha, r, btilde };
        let delta = btilde - 1.0;
        for x in [0.4, 2.3] {
            for j in 1..=r {
                let oracle = contour_integral(C64::new(-1.0, 0.0), 0.5, |w| {
                    (w * x).exp() * w.powi((m - r) as i32) * (w - delta).powi(j as i32 - 1)
                        / (w + 1.0).powi((m as f64 + alpha) as i32)
                });
                let got = incomplete_laguerre(IncompleteKind::Plain, j, x, &model)?.to_f64();
                worst = worst.max(rel(got, oracle));
            }
        }
    }
    Ok(worst)
}

fn chiral_q_contour(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (m, alpha, r, c) in [(6usize, 2.0, 2usize, 1.5), (5, 0.5, 3, 0.8)] {
        let model = KernelModel::ShiftedChiral { m, alpha, r, c };
        let c2 = c * c;
        for x in [0.4, 1.7, 3.5] {
            for k in 1..=r {
                let integral = contour_integral(C64::new(-0.5 * c2, 0.0), 0.5 * c2 + 1.0, |v| {
                    v.exp() * hyp0f1_complex(alpha + 1.0, -v * x) / (v.powi((m - r) as i32) * (v + c2).powi(k as i32))
                });
                let oracle = x.powf(alpha) * (-x).exp() * integral / ln_gamma(alpha + 1.0).exp();
                let got = chiral_pq(ChiralKind::Q, k, x, &model)?.to_f64();
                worst = worst.max(rel(got, oracle));
            }
        }
    }
    Ok(worst)
}

fn small_models() -> [KernelModel; 3] {
    [
        KernelModel::ShiftedGue { n: 6, r: 2, c: 1.3 },
        KernelModel::SpikedLue { m: 6, alpha: 1.0, r: 2, btilde: 0.4 },
        KernelModel::ShiftedChiral { m: 5, alpha: 2.0, r: 2, c: 1.2 },
    ]
}

/// Integration rule and weight factor for ∫ K(x,t)K(t,y) over each
/// model's natural variable (the chiral kernel lives at t², weight 2t).
fn kernel_rule(model: &KernelModel) -> (GaussRule, fn(f64) -> (f64, f64)) {
    match model {
        KernelModel::ShiftedGue { .. } => (GaussRule::composite(32, 16, -12.0, 14.0), |t| (t, 1.0)),
        KernelModel::SpikedLue { .. } => (GaussRule::composite(32, 60, 0.0, 20.0), |u| (u * u, 2.0 * u)),
        KernelModel::ShiftedChiral { .. } => (GaussRule::composite(32, 12, 0.0, 12.0), |t| (t, 2.0 * t)),
    }
}

fn kernel_traces(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for model in small_models() {
        let (rule, map) = kernel_rule(&model);
        let mut trace = 0.0;
        for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
            let (t, jac) = map(node);
            trace += w * jac * model.kernel(t, t)?;
        }
        worst = worst.max((trace - model.dimension() as f64).abs());
    }
    Ok(worst)
}

fn kernel_projections(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for model in small_models() {
        let (rule, map) = kernel_rule(&model);
        for (x, y) in [(0.8, 1.5), (2.0, 2.0), (0.3, 2.6)] {
            let mut proj = 0.0;
            for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
                let (t, jac) = map(node);
                proj += w * jac * model.kernel(x, t)? * model.kernel(t, y)?;
            }
            worst = worst.max((proj - model.kernel(x, y)?).abs());
        }
    }
    Ok(worst)
}

fn kernel_biorthogonality(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let gue = KernelModel::ShiftedGue { n: 6, r: 3, c: 1.5 };
    let gue_rule = GaussRule::composite(32, 24, -12.0, 16.0);
    let lue = KernelModel::SpikedLue { m: 6, alpha: 1.0, r: 2, btilde: 0.4 };
    let lue_rule = GaussRule::composite(32, 40, 0.0, 260f64.sqrt());
    let chiral = KernelModel::ShiftedChiral { m: 6, alpha: 2.0, r: 2, c: 1.5 };
    let chiral_rule = GaussRule::composite(32, 40, 0.0, 120f64.sqrt());
    for j in 1..=3 {
        for k in 1..=3 {
            let target = if j == k { 1.0 } else { 0.0 };
            let mut v = 0.0;
            for (&x, &w) in gue_rule.nodes.iter().zip(&gue_rule.weights) {
                v += w
                    * incomplete_hermite(IncompleteKind::Tilde, j, x, &gue)?.to_f64()
                    * incomplete_hermite(IncompleteKind::Plain, k, x, &gue)?.to_f64();
            }
            worst = worst.max((v - target).abs());
            if j > 2 || k > 2 {
                continue;
            }
            let (mut vl, mut vc) = (0.0, 0.0);
            for (&u, &w) in lue_rule.nodes.iter().zip(&lue_rule.weights) {
                let x = u * u;
                vl += 2.0
                    * u
                    * w
                    * incomplete_laguerre(IncompleteKind::Tilde, j, x, &lue)?.to_f64()
                    * incomplete_laguerre(IncompleteKind::Plain, k, x, &lue)?.to_f64();
            }
            for (&u, &w) in chiral_rule.nodes.iter().zip(&chiral_rule.weights) {
                let x = u * u;
                vc += 2.0
                    * u
                    * w
                    * chiral_pq(ChiralKind::P, j, x, &chiral)?.to_f64()
                    * chiral_pq(ChiralKind::Q, k, x, &chiral)?.to_f64();
            }
            worst = worst.max((vl - target).abs()).max((vc - target).abs());
        }
    }
    Ok(worst)
}

// -------------------------------------------------------------- jointpdf

fn argument_sets() -> Vec<(Vec<f64>, Vec<f64>)> {
    vec![
        (vec![0.3, -0.8], vec![1.1, 0.4]),
        (vec![0.9, 0.2], vec![-0.5, 0.7]),
        (vec![0.5, -0.4, 1.0], vec![0.2, 0.8, -0.6]),
        (vec![0.1, 0.6, 1.2], vec![0.9, 0.3, 0.5]),
    ]
}

fn f00_vs_series(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (x, y) in argument_sets() {
        let det = f00_unitary(&x, &y)?.to_f64();
        worst = worst.max(rel(det, hypergeometric_series(&x, &y, None, 30)));
    }
    Ok(worst)
}

fn f01_vs_series(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (x, y) in argument_sets() {
        let (x, y): (Vec<f64>, Vec<f64>) = (x.iter().map(|v| v.abs()).collect(), y.iter().map(|v| v.abs()).collect());
        for a in [x.len() as f64 + 0.5, x.len() as f64 + 2.0] {
            let det = f01_unitary(a, &x, &y)?.to_f64();
            worst = worst.max(rel(det, hypergeometric_series(&x, &y, Some(a), 30)));
        }
    }
    Ok(worst)
}

/// N = 1: the Gaussian Green function is the OU kernel; at α = −½ the
/// chiral one is the OU kernel folded at zero.
fn green_single_particle(_: &VerifyOptions) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (lambda, start, tau) in [(0.3, 1.2, 0.5), (1.7, 0.4, 2.0), (2.5, 3.0, 0.05)] {
        let config = EigenConfiguration::new(vec![lambda], vec![start], Some(tau))?;
        let ou = ornstein_uhlenbeck_kernel(lambda, start, tau);
        worst = worst.max(rel(green_function(GreenFamily::Gaussian, &config)?.to_f64(), ou));
        let folded = ou + ornstein_uhlenbeck_kernel(lambda, -start, tau);
        worst = worst.max(rel(green_function(GreenFamily::Chiral { alpha: -0.5 }, &config)?.to_f64(), folded));
    }
    Ok(worst)
}
