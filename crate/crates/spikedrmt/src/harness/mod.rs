//! Experiment orchestration: exact-versus-Monte-Carlo density comparisons,
//! separation-onset scans, figure presets, CSV/SVG output and the
//! verification suite.
//!
//! Every run is a pure function of its [`ExperimentConfig`]: samples are
//! drawn per trial index from the master seed and merged in index order,
//! and grid evaluations are collected in grid order, so results do not
//! depend on the number of worker threads.

pub mod oracles;
mod output;
mod presets;
mod verify;

pub use output::{csv_string, emit_csv, emit_svg, parse_csv, svg_string, CsvDocument};
pub use presets::{run_figure, FigureOptions, FigureOutput, FigurePreset};
pub use verify::{run_verify, run_verify_with, CheckOutcome, Mutation, Suite, VerifyOptions, VerifyReport};

use crate::ensembles::{sample_many, sample_model, SeedStream};
use crate::error::{Error, Result};
use crate::kernels::KernelModel;
use crate::quadrature::{linspace, GaussRule};
use crate::secular::{separation_predictor, Beta, SeparationPrediction, SpikeModel};
use crate::spectra::DensityCurve;
use crate::stats::{binned_l1_distance, freedman_diaconis_bins, histogram_density};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

/// Relative margin beyond the bulk edge for a maximum to count as a
/// separated peak.
pub const PEAK_EDGE_MARGIN: f64 = 0.05;
/// Default number of histogram bins.
pub const DEFAULT_BINS: usize = 101;

/// What an experiment does.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Exact density only.
    Density,
    /// Exact density (β=2) plus a Monte Carlo histogram.
    Mc,
    /// Separation-onset scan over spike values.
    Scan,
    /// Oracle cross-checks.
    Verify,
    /// A figure preset.
    Figure,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Density => "density",
            ExperimentKind::Mc => "mc",
            ExperimentKind::Scan => "scan",
            ExperimentKind::Verify => "verify",
            ExperimentKind::Figure => "figure",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "density" => ExperimentKind::Density,
            "mc" => ExperimentKind::Mc,
            "scan" => ExperimentKind::Scan,
            "verify" => ExperimentKind::Verify,
            "figure" => ExperimentKind::Figure,
            other => return Err(Error::Config(format!("unknown experiment kind {other:?}"))),
        })
    }
}

/// Evaluation grid `count` equally spaced points on [min, max].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        let grid = Self { min, max, count };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 || !(self.min < self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::Config(format!(
                "grid needs count >= 2 and finite min < max (got {}:{}:{})",
                self.min, self.max, self.count
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.count)
    }
}

/// Histogram bin count: fixed, or Freedman–Diaconis from the samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinSpec {
    Fixed(usize),
    Auto,
}

impl Default for BinSpec {
    fn default() -> Self {
        BinSpec::Fixed(DEFAULT_BINS)
    }
}

/// Full description of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub model: KernelModel,
    /// Symmetry class of the Monte Carlo sampler (exact curves need β=2).
    pub beta: Beta,
    pub trials: u64,
    pub bins: BinSpec,
    pub grid: GridSpec,
    pub master_seed: u64,
    pub outputs: Vec<PathBuf>,
}

impl ExperimentConfig {
    /// Config with defaults: β=2, 1000 trials, 101 bins, 401 grid points
    /// over the model's natural window, seed 0, no outputs.
    pub fn new(kind: ExperimentKind, model: KernelModel) -> Self {
        let (min, max) = model.support_hint();
        Self {
            kind,
            model,
            beta: Beta::Complex,
            trials: 1000,
            bins: BinSpec::default(),
            grid: GridSpec { min, max, count: 401 },
            master_seed: 0,
            outputs: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if let BinSpec::Fixed(0) = self.bins {
            return Err(Error::Config("bins must be at least 1".into()));
        }
        self.model.validate()
    }

    /// `key=value` pairs sufficient to rebuild the config with
    /// [`from_header`](Self::from_header).
    pub fn to_header(&self) -> Vec<(String, String)> {
        let mut h = vec![
            ("kind".to_string(), self.kind.name().to_string()),
            ("model".to_string(), model_family(&self.model).to_string()),
        ];
        for (k, v) in model_parameters(&self.model) {
            h.push((format!("model.{k}"), v));
        }
        h.push(("beta".into(), self.beta.index().to_string()));
        h.push(("trials".into(), self.trials.to_string()));
        h.push((
            "bins".into(),
            match self.bins {
                BinSpec::Fixed(b) => b.to_string(),
                BinSpec::Auto => "auto".into(),
            },
        ));
        h.push(("grid".into(), format!("{:?}:{:?}:{}", self.grid.min, self.grid.max, self.grid.count)));
        h.push(("master_seed".into(), self.master_seed.to_string()));
        h
    }

    /// Inverse of [`to_header`](Self::to_header) (outputs are not stored).
    pub fn from_header(header: &[(String, String)]) -> Result<Self> {
        let get = |key: &str| {
            header
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| Error::Config(format!("header lacks {key}")))
        };
        let num = |key: &str| -> Result<f64> {
            get(key)?.parse().map_err(|_| Error::Config(format!("header value {key} is not a number")))
        };
        let int = |key: &str| -> Result<usize> {
            get(key)?.parse().map_err(|_| Error::Config(format!("header value {key} is not an integer")))
        };
        let model = match get("model")? {
            "shifted-gue" => KernelModel::ShiftedGue { n: int("model.n")?, r: int("model.r")?, c: num("model.c")? },
            "spiked-lue" => KernelModel::SpikedLue {
                m: int("model.m")?,
                alpha: num("model.alpha")?,
                r: int("model.r")?,
                btilde: num("model.btilde")?,
            },
            "shifted-chiral" => KernelModel::ShiftedChiral {
                m: int("model.m")?,
                alpha: num("model.alpha")?,
                r: int("model.r")?,
                c: num("model.c")?,
            },
            other => return Err(Error::Config(format!("unknown model {other:?}"))),
        };
        let grid = parse_grid(get("grid")?)?;
        let bins = match get("bins")? {
            "auto" => BinSpec::Auto,
            b => BinSpec::Fixed(b.parse().map_err(|_| Error::Config("bad bins".into()))?),
        };
        let config = Self {
            kind: ExperimentKind::from_name(get("kind")?)?,
            model,
            beta: Beta::from_index(int("beta")? as u8)?,
            trials: int("trials")? as u64,
            bins,
            grid,
            master_seed: get("master_seed")?.parse().map_err(|_| Error::Config("bad master_seed".into()))?,
            outputs: Vec::new(),
        };
        config.validate()?;
        Ok(config)
    }
}

/// Parses `min:max:count`.
pub fn parse_grid(text: &str) -> Result<GridSpec> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::Config(format!("grid {text:?} is not min:max:count"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let min = parts[0].trim().parse().map_err(|_| bad())?;
    let max = parts[1].trim().parse().map_err(|_| bad())?;
    let count = parts[2].trim().parse().map_err(|_| bad())?;
    GridSpec::new(min, max, count)
}

/// Short family name used in CLI flags and file headers.
pub fn model_family(model: &KernelModel) -> &'static str {
    match model {
        KernelModel::ShiftedGue { .. } => "shifted-gue",
        KernelModel::SpikedLue { .. } => "spiked-lue",
        KernelModel::ShiftedChiral { .. } => "shifted-chiral",
    }
}

fn model_parameters(model: &KernelModel) -> Vec<(&'static str, String)> {
    match *model {
        KernelModel::ShiftedGue { n, r, c } => {
            vec![("n", n.to_string()), ("r", r.to_string()), ("c", format!("{c:?}"))]
        }
        KernelModel::SpikedLue { m, alpha, r, btilde } => vec![
            ("m", m.to_string()),
            ("alpha", format!("{alpha:?}")),
            ("r", r.to_string()),
            ("btilde", format!("{btilde:?}")),
        ],
        KernelModel::ShiftedChiral { m, alpha, r, c } => {
            vec![("m", m.to_string()), ("alpha", format!("{alpha:?}")), ("r", r.to_string()), ("c", format!("{c:?}"))]
        }
    }
}

/// One-line description such as `shifted-gue n=15 r=5 c=15.0`.
pub fn describe_model(model: &KernelModel) -> String {
    let params: Vec<String> = model_parameters(model).into_iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{} {}", model_family(model), params.join(" "))
}

/// Outcome of a comparison. Distances are between densities divided by
/// their declared mass (probability densities).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComparisonReport {
    /// L1 distance between the Monte Carlo histogram and the exact density.
    pub l1_distance: Option<f64>,
    /// Largest |histogram − exact| at bin centres (density units).
    pub sup_distance: Option<f64>,
    /// ∫ exact density over the grid window.
    pub trace_exact: Option<f64>,
    /// Histogram mass (in-range eigenvalues per trial).
    pub trace_empirical: Option<f64>,
    /// Separated maxima of the exact density beyond the bulk edge.
    pub peak_locations: Vec<f64>,
    /// Large-size location of the separated eigenvalue, if above threshold.
    pub predictor_location: Option<f64>,
    /// Further named measurements (reference-curve distances, …).
    pub metrics: Vec<(String, f64)>,
    pub pass_flags: Vec<(String, bool)>,
}

impl ComparisonReport {
    pub fn flag(&self, name: &str) -> Option<bool> {
        self.pass_flags.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn set_flag(&mut self, name: &str, value: bool) {
        match self.pass_flags.iter_mut().find(|(k, _)| k == name) {
            Some(entry) => entry.1 = value,
            None => self.pass_flags.push((name.to_string(), value)),
        }
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn set_metric(&mut self, name: &str, value: f64) {
        match self.metrics.iter_mut().find(|(k, _)| k == name) {
            Some(entry) => entry.1 = value,
            None => self.metrics.push((name.to_string(), value)),
        }
    }

    /// True when every flag is set.
    pub fn all_passed(&self) -> bool {
        self.pass_flags.iter().all(|(_, v)| *v)
    }

    /// `key=value` lines for file headers.
    pub fn to_header(&self) -> Vec<(String, String)> {
        let mut h = Vec::new();
        let mut opt = |k: &str, v: Option<f64>| {
            if let Some(v) = v {
                h.push((format!("report.{k}"), format!("{v:?}")));
            }
        };
        opt("l1_distance", self.l1_distance);
        opt("sup_distance", self.sup_distance);
        opt("trace_exact", self.trace_exact);
        opt("trace_empirical", self.trace_empirical);
        opt("predictor_location", self.predictor_location);
        let peaks: Vec<String> = self.peak_locations.iter().map(|p| format!("{p:?}")).collect();
        h.push(("report.peak_locations".into(), peaks.join(";")));
        for (k, v) in &self.metrics {
            h.push((format!("report.metric.{k}"), format!("{v:?}")));
        }
        for (k, v) in &self.pass_flags {
            h.push((format!("report.flag.{k}"), v.to_string()));
        }
        h
    }
}

/// Result of [`run_density_experiment`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityExperiment {
    /// Exact density on the config grid (β=2 only).
    pub exact: Option<DensityCurve>,
    /// Histogram of sampled eigenvalues (Monte Carlo runs only).
    pub empirical: Option<DensityCurve>,
    /// Exact density at the histogram bin centres.
    pub exact_at_bins: Option<DensityCurve>,
    pub report: ComparisonReport,
}

/// Upper edge of the limiting bulk: √(2N), 4m, or 2√m.
pub fn bulk_edge(model: &KernelModel) -> f64 {
    match *model {
        KernelModel::ShiftedGue { n, .. } => (2.0 * n as f64).sqrt(),
        KernelModel::SpikedLue { m, .. } => 4.0 * m as f64,
        KernelModel::ShiftedChiral { m, .. } => 2.0 * (m as f64).sqrt(),
    }
}

fn integer_alpha(alpha: f64) -> Result<usize> {
    if alpha >= 0.0 && alpha.fract() == 0.0 {
        Ok(alpha as usize)
    } else {
        Err(Error::Config(format!("Monte Carlo sampling needs an integer alpha = n − m >= 0 (got {alpha})")))
    }
}

/// The sampler model matching a kernel model: shift eigenvalue c ↦
/// GaussianShift c/(J/2); covariance spike 1/b̃ ↦ WishartSpike s;
/// singular-value shift c ↦ ChiralShift c/√m. α must be an integer.
pub fn sampling_model(model: &KernelModel, beta: Beta) -> Result<SpikeModel> {
    model.validate()?;
    Ok(match *model {
        KernelModel::ShiftedGue { n, r, c } => {
            SpikeModel::GaussianShift { beta, n, c: c / (0.5 * (2.0 * n as f64).sqrt()), r }
        }
        KernelModel::SpikedLue { m, alpha, r, btilde } => {
            SpikeModel::WishartSpike { beta, m, n: m + integer_alpha(alpha)?, s: 1.0 / btilde, r }
        }
        KernelModel::ShiftedChiral { m, alpha, r, c } => {
            SpikeModel::ChiralShift { beta, m, n: m + integer_alpha(alpha)?, c: c / (m as f64).sqrt(), r }
        }
    })
}

/// Large-size separation prediction for a kernel model (α need not be an
/// integer: none of the predictors depends on it).
pub fn prediction(model: &KernelModel) -> Result<SeparationPrediction> {
    let rounded = match *model {
        KernelModel::SpikedLue { m, alpha, r, btilde } => {
            KernelModel::SpikedLue { m, alpha: alpha.max(0.0).ceil(), r, btilde }
        }
        KernelModel::ShiftedChiral { m, alpha, r, c } => {
            KernelModel::ShiftedChiral { m, alpha: alpha.max(0.0).ceil(), r, c }
        }
        other => other,
    };
    let spike = sampling_model(&rounded, Beta::Complex)?;
    if spike.rank() == 0 {
        return Ok(SeparationPrediction { location: None, threshold: threshold(model), above_threshold: false });
    }
    separation_predictor(&spike)
}

fn threshold(model: &KernelModel) -> f64 {
    match model {
        KernelModel::SpikedLue { .. } => 2.0,
        _ => 1.0,
    }
}

/// The model with its spike set from an onset-scan value: c in units of
/// J/2 (Gaussian, chiral), or b̃ (LUE; 0 means no spike).
pub fn with_spike(model: &KernelModel, value: f64) -> Result<KernelModel> {
    if !(value >= 0.0) || !value.is_finite() {
        return Err(Error::Config(format!("spike value {value} must be finite and >= 0")));
    }
    let out = match *model {
        KernelModel::ShiftedGue { n, r, .. } => {
            KernelModel::ShiftedGue { n, r, c: value * 0.5 * (2.0 * n as f64).sqrt() }
        }
        KernelModel::SpikedLue { m, alpha, r, .. } => {
            if value == 0.0 {
                KernelModel::SpikedLue { m, alpha, r: 0, btilde: 1.0 }
            } else {
                KernelModel::SpikedLue { m, alpha, r, btilde: value }
            }
        }
        KernelModel::ShiftedChiral { m, alpha, r, .. } => {
            KernelModel::ShiftedChiral { m, alpha, r, c: value * (m as f64).sqrt() }
        }
    };
    out.validate()?;
    Ok(out)
}

/// Spike value in the predictor parametrization (inverse of [`with_spike`]).
pub fn spike_value(model: &KernelModel) -> f64 {
    match *model {
        KernelModel::ShiftedGue { n, c, .. } => c / (0.5 * (2.0 * n as f64).sqrt()),
        KernelModel::SpikedLue { r, btilde, .. } => {
            if r == 0 {
                0.0
            } else {
                btilde
            }
        }
        KernelModel::ShiftedChiral { m, c, .. } => c / (m as f64).sqrt(),
    }
}

/// Exact density on the grid (parallel over grid points, ordered result).
pub fn exact_density_curve(model: &KernelModel, grid: &GridSpec) -> Result<DensityCurve> {
    grid.validate()?;
    exact_density_on(model, grid.points())
}

fn exact_density_on(model: &KernelModel, points: Vec<f64>) -> Result<DensityCurve> {
    let values = points.par_iter().map(|&x| model.density(x)).collect::<Result<Vec<f64>>>()?;
    let mut curve = DensityCurve::new(points, values)?;
    curve.set_meta("label", "exact");
    curve.set_meta("model", describe_model(model));
    curve.set_meta("mass", model.dimension());
    Ok(curve)
}

/// ∫_a^b f by composite Gauss–Legendre in u = √(x − a), which absorbs
/// (x − a)^α behaviour at hard edges. Terms are evaluated in parallel but
/// summed in node order, so the result does not depend on the worker count.
pub fn integrate_window(a: f64, b: f64, panels: usize, f: impl Fn(f64) -> f64 + Sync) -> f64 {
    let rule = GaussRule::composite(16, panels.max(1), 0.0, (b - a).sqrt());
    rule.nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&u, &w)| w * 2.0 * u * f(a + u * u))
        .collect::<Vec<f64>>()
        .iter()
        .sum()
}

/// ∫ |f/mass − g/mass| over [a, b]: L1 distance between a density and a
/// reference density sharing the declared mass.
pub fn reference_l1(a: f64, b: f64, mass: f64, f: impl Fn(f64) -> f64 + Sync, g: impl Fn(f64) -> f64 + Sync) -> f64 {
    let rule = GaussRule::composite(32, 80, a, b);
    rule.nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&x, &w)| w * (f(x) - g(x)).abs())
        .collect::<Vec<f64>>()
        .iter()
        .sum::<f64>()
        / mass
}

/// Eigenvalues of `trials` samples, concatenated in trial order. For the
/// chiral model these are the m positive eigenvalues of each sample.
pub fn sample_eigenvalues(model: &KernelModel, beta: Beta, trials: u64, master_seed: u64) -> Result<Vec<f64>> {
    let spike = sampling_model(model, beta)?;
    let stream = SeedStream::new(master_seed);
    let keep = model.dimension();
    let samples = sample_many(trials, |t| sample_model(&spike, &stream, t))?;
    Ok(samples
        .into_iter()
        .flat_map(|s| {
            let k = s.eigenvalues.len();
            s.eigenvalues.into_iter().skip(k - keep)
        })
        .collect())
}

/// Strict local maxima of the curve beyond (1 + margin)·edge, each refined
/// by golden-section search on its grid bracket.
pub fn separated_peaks(model: &KernelModel, curve: &DensityCurve, edge: f64, margin: f64) -> Result<Vec<f64>> {
    let cut = edge * (1.0 + margin);
    let (x, y) = (&curve.grid, &curve.values);
    let mut peaks = Vec::new();
    for i in 1..x.len().saturating_sub(1) {
        if x[i] > cut && y[i] > y[i - 1] && y[i] > y[i + 1] {
            peaks.push(golden_section_max(|t| model.density(t), x[i - 1], x[i + 1])?);
        }
    }
    Ok(peaks)
}

fn golden_section_max(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let tol = 1e-9 * (a.abs() + b.abs()).max(1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Runs a density (or Monte Carlo) experiment.
pub fn run_density_experiment(config: &ExperimentConfig) -> Result<DensityExperiment> {
    config.validate()?;
    let model = &config.model;
    let with_mc = matches!(config.kind, ExperimentKind::Mc);
    if config.beta != Beta::Complex && !with_mc {
        return Err(Error::Config("exact densities are available for β = 2 only".into()));
    }
    let mut report = ComparisonReport { predictor_location: prediction(model)?.location, ..Default::default() };
    let exact = if config.beta == Beta::Complex {
        let curve = exact_density_curve(model, &config.grid)?;
        let trace = integrate_window(config.grid.min, config.grid.max, 64, |x| model.density(x).unwrap_or(f64::NAN));
        if !trace.is_finite() {
            return Err(Error::Domain("exact density failed on the grid window".into()));
        }
        report.trace_exact = Some(trace);
        let dim = model.dimension() as f64;
        report.set_flag("support_covered", (dim - trace).abs() <= 0.01 * dim);
        report.peak_locations = separated_peaks(model, &curve, bulk_edge(model), PEAK_EDGE_MARGIN)?;
        Some(curve)
    } else {
        None
    };

    let (mut empirical, mut exact_at_bins) = (None, None);
    if with_mc {
        let eigenvalues = sample_eigenvalues(model, config.beta, config.trials, config.master_seed)?;
        let (lo, hi) = (config.grid.min, config.grid.max);
        let bins = match config.bins {
            BinSpec::Fixed(b) => b,
            BinSpec::Auto => freedman_diaconis_bins(&eigenvalues, lo, hi),
        };
        let mut hist = histogram_density(&eigenvalues, lo, hi, bins, config.trials as f64)?;
        hist.set_meta("label", "monte-carlo");
        hist.set_meta("model", describe_model(model));
        hist.set_meta("beta", config.beta.index());
        hist.set_meta("trials", config.trials);
        hist.set_meta("master_seed", config.master_seed);
        report.trace_empirical = Some(hist.integral_by_bins());
        if config.beta == Beta::Complex {
            let at_bins = exact_density_on(model, hist.grid.clone())?;
            report.l1_distance = Some(binned_l1_distance(&hist, |x| model.density(x).unwrap_or(f64::NAN))?);
            report.sup_distance =
                Some(hist.values.iter().zip(&at_bins.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            if let (Some(te), Some(tm)) = (report.trace_exact, report.trace_empirical) {
                let dim = model.dimension() as f64;
                report.set_flag("empirical_mass_consistent", (te - tm).abs() <= 0.01 * dim);
            }
            exact_at_bins = Some(at_bins);
        }
        empirical = Some(hist);
    }
    Ok(DensityExperiment { exact, empirical, exact_at_bins, report })
}

trait BinMass {
    fn integral_by_bins(&self) -> f64;
}

impl BinMass for DensityCurve {
    /// Σ value·width for a uniform-bin histogram.
    fn integral_by_bins(&self) -> f64 {
        let width = if self.grid.len() > 1 { self.grid[1] - self.grid[0] } else { 0.0 };
        self.values.iter().sum::<f64>() * width
    }
}

/// One spike value of an onset scan.
#[derive(Clone, Debug, PartialEq)]
pub struct OnsetPoint {
    pub spike: f64,
    pub model: KernelModel,
    pub curve: DensityCurve,
    pub report: ComparisonReport,
}

/// Window [0.9·edge, max(1.6·edge, 1.25·largest prediction)] for scanning
/// the given spike values of `model`.
pub fn onset_grid(model: &KernelModel, spikes: &[f64], count: usize) -> Result<GridSpec> {
    let edge = bulk_edge(model);
    let mut hi = 1.6 * edge;
    for &s in spikes {
        if let Some(loc) = prediction(&with_spike(model, s)?)?.location {
            hi = hi.max(1.25 * loc);
        }
    }
    GridSpec::new(0.9 * edge, hi, count)
}

/// Evaluates the exact density on `config.grid` for each spike value,
/// locates separated peaks and compares them with the predictor.
///
/// Flags: `separated_peak_found` (spike ≥ 1.5× threshold) or
/// `no_separated_peak` (spike ≤ threshold); values in between are reported
/// without a flag.
pub fn run_onset_scan(config: &ExperimentConfig, spikes: &[f64]) -> Result<Vec<OnsetPoint>> {
    config.validate()?;
    if config.beta != Beta::Complex {
        return Err(Error::Config("onset scans use exact densities and need β = 2".into()));
    }
    if spikes.is_empty() {
        return Err(Error::EmptyRequest("onset scan with no spike values"));
    }
    spikes
        .iter()
        .map(|&spike| {
            let model = with_spike(&config.model, spike)?;
            let mut curve = exact_density_curve(&model, &config.grid)?;
            curve.set_meta("label", format!("spike={spike}"));
            let predicted = prediction(&model)?;
            let mut report = ComparisonReport {
                predictor_location: predicted.location,
                peak_locations: separated_peaks(&model, &curve, bulk_edge(&model), PEAK_EDGE_MARGIN)?,
                ..Default::default()
            };
            let strength = if matches!(model, KernelModel::SpikedLue { .. }) {
                if spike == 0.0 {
                    0.0
                } else {
                    1.0 / spike
                }
            } else {
                spike
            };
            let threshold = predicted.threshold;
            if strength >= 1.5 * threshold {
                report.set_flag("separated_peak_found", !report.peak_locations.is_empty());
            } else if strength <= threshold {
                report.set_flag("no_separated_peak", report.peak_locations.is_empty());
            }
            if let (Some(loc), Some(&peak)) = (predicted.location, report.peak_locations.last()) {
                report.set_metric("peak_minus_predictor", peak - loc);
            }
            Ok(OnsetPoint { spike, model, curve, report })
        })
        .collect()
}

/// Writes the experiment's curves: `.csv` paths get the exact curve (or,
/// for Monte Carlo runs, histogram and exact-at-bin-centre columns) with
/// the config and report in the header; `.svg` paths get a line plot.
pub fn write_outputs(config: &ExperimentConfig, experiment: &DensityExperiment, paths: &[PathBuf]) -> Result<()> {
    let mut header = config.to_header();
    header.extend(experiment.report.to_header());
    for path in paths {
        let curves: Vec<&DensityCurve> = match (&experiment.empirical, &experiment.exact_at_bins, &experiment.exact) {
            (Some(h), Some(e), _) => vec![h, e],
            (Some(h), None, _) => vec![h],
            (None, _, Some(e)) => vec![e],
            (None, _, None) => return Err(Error::Config("nothing to write".into())),
        };
        write_by_extension(path, &curves, &header, &describe_model(&config.model))?;
    }
    Ok(())
}

pub(crate) fn write_by_extension(
    path: &Path,
    curves: &[&DensityCurve],
    header: &[(String, String)],
    title: &str,
) -> Result<()> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("svg") => emit_svg(curves, title, path),
        _ => emit_csv(curves, header, path),
    }
}
