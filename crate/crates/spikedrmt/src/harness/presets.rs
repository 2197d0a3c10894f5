//! The seven figure presets: exact densities, reference curves for the
//! large-spike factorizations, onset scans and (for fig1) Monte Carlo.

use super::{
    describe_model, exact_density_curve, integrate_window, onset_grid, reference_l1, run_density_experiment,
    run_onset_scan, write_by_extension, BinSpec, ComparisonReport, ExperimentConfig, ExperimentKind, GridSpec,
};
use crate::error::{Error, Result};
use crate::kernels::{kernel_gue, kernel_laguerre, KernelModel};
use crate::quadrature::linspace;
use crate::spectra::DensityCurve;
use rayon::prelude::*;
use std::path::{Path, PathBuf};

/// Grid points of onset-scan windows.
const SCAN_POINTS: usize = 241;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigurePreset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

impl FigurePreset {
    pub fn all() -> [FigurePreset; 7] {
        use FigurePreset::*;
        [Fig1, Fig2, Fig3, Fig4, Fig5, Fig6, Fig7]
    }

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::Fig1 => "fig1",
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5 => "fig5",
            FigurePreset::Fig6 => "fig6",
            FigurePreset::Fig7 => "fig7",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::all()
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown figure {name:?} (expected fig1..fig7)")))
    }

    /// The model drawn in the figure (for scans, with the largest spike).
    pub fn model(self) -> KernelModel {
        match self {
            FigurePreset::Fig1 => KernelModel::ShiftedGue { n: 15, r: 5, c: 15.0 },
            FigurePreset::Fig2 => KernelModel::ShiftedGue { n: 500, r: 1, c: 2.0 * 0.5 * 1000f64.sqrt() },
            FigurePreset::Fig3 => KernelModel::SpikedLue { m: 10, alpha: 0.5, r: 3, btilde: 0.05 },
            FigurePreset::Fig4 => KernelModel::SpikedLue { m: 500, alpha: 0.5, r: 1, btilde: 0.275 },
            FigurePreset::Fig5 => KernelModel::ShiftedChiral { m: 15, alpha: 4.0, r: 5, c: 15.0 },
            FigurePreset::Fig6 => KernelModel::ShiftedChiral { m: 500, alpha: 2.0, r: 1, c: 2.0 * 500f64.sqrt() },
            FigurePreset::Fig7 => KernelModel::SpikedLue { m: 20, alpha: 3.0, r: 5, btilde: 100.0 },
        }
    }

    /// Spike values of the onset-scan figures (c in units of J/2, or b̃).
    pub fn scan_spikes(self) -> Option<&'static [f64]> {
        match self {
            FigurePreset::Fig2 | FigurePreset::Fig6 => Some(&[0.0, 1.0, 1.2, 2.0]),
            FigurePreset::Fig4 => Some(&[0.0, 0.5, 0.45, 0.275]),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureOptions {
    /// Monte Carlo trials (fig1 only; default 2·10⁵).
    pub trials: Option<u64>,
    pub master_seed: u64,
    /// Skip the Monte Carlo comparison entirely.
    pub skip_monte_carlo: bool,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self { trials: None, master_seed: 1, skip_monte_carlo: false }
    }
}

/// One plotted panel: curves (sharing a grid) written to CSV, plus extra
/// curves (e.g. a histogram) drawn only in the SVG.
#[derive(Clone, Debug, PartialEq)]
pub struct FigurePanel {
    pub name: String,
    pub curves: Vec<DensityCurve>,
    pub overlays: Vec<DensityCurve>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureOutput {
    pub preset: FigurePreset,
    pub panels: Vec<FigurePanel>,
    /// Named reports: `main` for density figures, `spike=<v>` for scans.
    pub reports: Vec<(String, ComparisonReport)>,
    pub files: Vec<PathBuf>,
}

impl FigureOutput {
    pub fn report(&self, name: &str) -> Option<&ComparisonReport> {
        self.reports.iter().find(|(k, _)| k == name).map(|(_, r)| r)
    }

    /// True when every report passes every flag.
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|(_, r)| r.all_passed())
    }
}

fn curve_from(points: &[f64], label: &str, f: impl Fn(f64) -> Result<f64> + Sync) -> Result<DensityCurve> {
    let values = points.par_iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    Ok(DensityCurve::new(points.to_vec(), values)?.with_meta("label", label))
}

fn exact_on(model: &KernelModel, min: f64, max: f64, count: usize) -> Result<DensityCurve> {
    exact_density_curve(model, &GridSpec::new(min, max, count)?)
}

fn density_fn(model: &KernelModel) -> impl Fn(f64) -> f64 + Sync + '_ {
    move |x| model.density(x).unwrap_or(f64::NAN)
}

/// Records a metric and a `<name>_below_<tol>` flag.
fn gate(report: &mut ComparisonReport, name: &str, value: f64, tolerance: f64) {
    report.set_metric(name, value);
    report.set_flag(&format!("{name}_below_{tolerance}"), value < tolerance);
}

/// Computes a preset and, when `outdir` is given, writes
/// `<fig>[_<panel>].csv` and `.svg` there.
pub fn run_figure(preset: FigurePreset, outdir: Option<&Path>, options: &FigureOptions) -> Result<FigureOutput> {
    let model = preset.model();
    let mut output = match preset.scan_spikes() {
        Some(spikes) => scan_figure(preset, &model, spikes)?,
        None => density_figure(preset, &model, options)?,
    };
    if let Some(dir) = outdir {
        let mut header = vec![
            ("figure".to_string(), preset.name().to_string()),
            ("model".to_string(), describe_model(&model)),
            ("master_seed".to_string(), options.master_seed.to_string()),
        ];
        for (name, report) in &output.reports {
            for (k, v) in report.to_header() {
                header.push((k.replacen("report.", &format!("report.{name}."), 1), v));
            }
        }
        let mut files = Vec::new();
        for panel in &output.panels {
            let stem = if panel.name.is_empty() {
                preset.name().to_string()
            } else {
                format!("{}_{}", preset.name(), panel.name)
            };
            let title = format!("{} {}", preset.name(), describe_model(&model));
            let csv_curves: Vec<&DensityCurve> = panel.curves.iter().collect();
            let csv = dir.join(format!("{stem}.csv"));
            write_by_extension(&csv, &csv_curves, &header, &title)?;
            files.push(csv);
            for (i, overlay) in panel.overlays.iter().enumerate() {
                let path = dir.join(format!("{stem}_overlay{i}.csv"));
                write_by_extension(&path, &[overlay], &header, &title)?;
                files.push(path);
            }
            let svg_curves: Vec<&DensityCurve> = panel.curves.iter().chain(&panel.overlays).collect();
            let svg = dir.join(format!("{stem}.svg"));
            write_by_extension(&svg, &svg_curves, &header, &title)?;
            files.push(svg);
        }
        output.files = files;
    }
    Ok(output)
}

fn scan_figure(preset: FigurePreset, model: &KernelModel, spikes: &[f64]) -> Result<FigureOutput> {
    let grid = onset_grid(model, spikes, SCAN_POINTS)?;
    let mut config = ExperimentConfig::new(ExperimentKind::Scan, *model);
    config.grid = grid;
    let points = run_onset_scan(&config, spikes)?;
    let mut reports = Vec::new();
    let mut curves = Vec::new();
    for point in points {
        reports.push((format!("spike={}", point.spike), point.report));
        curves.push(point.curve);
    }
    Ok(FigureOutput {
        preset,
        panels: vec![FigurePanel { name: String::new(), curves, overlays: Vec::new() }],
        reports,
        files: Vec::new(),
    })
}

fn density_figure(preset: FigurePreset, model: &KernelModel, options: &FigureOptions) -> Result<FigureOutput> {
    let mut report = ComparisonReport::default();
    let mut panels = Vec::new();
    match *model {
        KernelModel::ShiftedGue { n, r, c } => {
            // fig1: bulk of N−r unshifted eigenvalues plus an r×r GUE at c.
            let (lo, hi, split) = (-9.0, c + 7.0, 10.0);
            let trace = integrate_window(-15.0, c + 12.0, 64, density_fn(model));
            report.trace_exact = Some(trace);
            report.set_flag("trace_within_1e-6", (trace - n as f64).abs() < 1e-6);
            let lobe = move |x: f64| kernel_gue(r, x - c, x - c);
            let bulk = move |x: f64| kernel_gue(n - r, x, x);
            gate(
                &mut report,
                "lobe_l1",
                reference_l1(split, hi, r as f64, density_fn(model), |x| lobe(x).unwrap_or(f64::NAN)),
                0.05,
            );
            report.set_metric(
                "bulk_l1",
                reference_l1(lo, split, (n - r) as f64, density_fn(model), |x| bulk(x).unwrap_or(f64::NAN)),
            );
            let grid = linspace(lo, hi, 621);
            let exact = exact_on(model, lo, hi, 621)?;
            let mut overlays = Vec::new();
            if !options.skip_monte_carlo {
                let mut config = ExperimentConfig::new(ExperimentKind::Mc, *model);
                config.trials = options.trials.unwrap_or(200_000);
                config.master_seed = options.master_seed;
                config.bins = BinSpec::default();
                config.grid = GridSpec::new(lo, hi, 621)?;
                let mc = run_density_experiment(&config)?;
                let l1 = mc.report.l1_distance.expect("β=2 Monte Carlo run has an L1 distance");
                gate(&mut report, "mc_l1", l1, 0.02);
                report.l1_distance = Some(l1);
                report.sup_distance = mc.report.sup_distance;
                report.trace_empirical = mc.report.trace_empirical;
                overlays.push(mc.empirical.expect("Monte Carlo histogram"));
            }
            panels.push(FigurePanel {
                name: String::new(),
                curves: vec![
                    exact,
                    curve_from(&grid, &format!("GUE N={} (bulk)", n - r), bulk)?,
                    curve_from(&grid, &format!("GUE N={r} at {c}"), lobe)?,
                ],
                overlays,
            });
        }
        KernelModel::ShiftedChiral { m, alpha, r, c } => {
            // fig5: bulk of m−r unshifted singular values plus an r×r GUE at c.
            let (hi, split) = (c + 7.0, 10.5);
            let trace = integrate_window(0.0, c + 12.0, 64, density_fn(model));
            report.trace_exact = Some(trace);
            report.set_flag("trace_within_1e-6", (trace - m as f64).abs() < 1e-6);
            let bulk_model = KernelModel::ShiftedChiral { m: m - r, alpha, r: 0, c: 0.0 };
            let lobe = move |x: f64| kernel_gue(r, x - c, x - c);
            gate(
                &mut report,
                "lobe_l1",
                reference_l1(split, hi, r as f64, density_fn(model), |x| lobe(x).unwrap_or(f64::NAN)),
                0.05,
            );
            report.set_metric(
                "bulk_l1",
                reference_l1(0.0, split, (m - r) as f64, density_fn(model), density_fn(&bulk_model)),
            );
            let grid = linspace(0.0, hi, 441);
            panels.push(FigurePanel {
                name: String::new(),
                curves: vec![
                    exact_on(model, 0.0, hi, 441)?,
                    curve_from(&grid, &format!("chiral m={} (bulk)", m - r), |x| bulk_model.density(x))?,
                    curve_from(&grid, &format!("GUE N={r} at {c}"), lobe)?,
                ],
                overlays: Vec::new(),
            });
        }
        KernelModel::SpikedLue { m, alpha, r, btilde } => {
            let mf = m as f64;
            let trace = integrate_window(0.0, model.support_hint().1, 128, density_fn(model));
            report.trace_exact = Some(trace);
            report.set_flag("trace_within_1e-6", (trace - mf).abs() < 1e-6);
            // Large covariance spike (b̃ < 1): the r spike eigenvalues see all
            // m + α samples (r×r LUE in b̃λ with α ↦ α + m − r) and the bulk
            // keeps α. Small spike (b̃ > 1): the bulk sees them all (α ↦ α + r)
            // and the r small eigenvalues keep α.
            let (bulk_alpha, lobe_alpha) =
                if btilde < 1.0 { (alpha, alpha + (m - r) as f64) } else { (alpha + r as f64, alpha) };
            let bulk = move |x: f64| kernel_laguerre(m - r, bulk_alpha, x, x);
            let lobe = move |x: f64| Ok(btilde * kernel_laguerre(r, lobe_alpha, btilde * x, btilde * x)?);
            let eval = |f: &dyn Fn(f64) -> Result<f64>, x: f64| f(x).unwrap_or(f64::NAN);
            let (bulk_window, lobe_window, panel_windows) = if btilde < 1.0 {
                // Large covariance spike: lobe far right of the bulk.
                let split = 70.0;
                let top = 110.0 / btilde;
                ((0.0, split), (split, top), [(0.0, 60.0, 601), (split, top, 881)])
            } else {
                // Small covariance spike: lobe squeezed toward zero.
                let split = 0.5;
                ((split, 110.0), (0.0, split), [(0.0, 110.0, 551), (0.0, 1.0, 501)])
            };
            let lobe_l1 = reference_l1(lobe_window.0, lobe_window.1, r as f64, density_fn(model), |x| eval(&lobe, x));
            let bulk_l1 =
                reference_l1(bulk_window.0, bulk_window.1, (m - r) as f64, density_fn(model), |x| eval(&bulk, x));
            if btilde < 1.0 {
                gate(&mut report, "lobe_l1", lobe_l1, 0.05);
                report.set_metric("bulk_l1", bulk_l1);
            } else {
                gate(&mut report, "bulk_l1", bulk_l1, 0.05);
                report.set_metric("lobe_l1", lobe_l1);
            }
            for (name, (lo, hi, count)) in ["a", "b"].into_iter().zip(panel_windows) {
                let grid = linspace(lo, hi, count);
                panels.push(FigurePanel {
                    name: name.to_string(),
                    curves: vec![
                        exact_on(model, lo, hi, count)?,
                        curve_from(&grid, &format!("LUE m={} alpha={bulk_alpha} (bulk)", m - r), bulk)?,
                        curve_from(&grid, &format!("LUE m={r} alpha={lobe_alpha} in b*x"), lobe)?,
                    ],
                    overlays: Vec::new(),
                });
            }
        }
    }
    Ok(FigureOutput { preset, panels, reports: vec![("main".to_string(), report)], files: Vec::new() })
}
