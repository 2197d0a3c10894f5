//! `spikedrmt` command-line interface.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on a
//! configuration or runtime error. The worker count follows the
//! `RAYON_NUM_THREADS` environment variable.

use clap::{Args, Parser, Subcommand, ValueEnum};
use spikedrmt::harness::{
    self, onset_grid, parse_grid, run_density_experiment, run_figure, run_onset_scan, run_verify, write_outputs,
    BinSpec, ComparisonReport, ExperimentConfig, ExperimentKind, FigureOptions, FigurePreset, Suite,
};
use spikedrmt::kernels::KernelModel;
use spikedrmt::secular::Beta;
use spikedrmt::spectra::DensityCurve;
use spikedrmt::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "spikedrmt",
    version,
    about = "Exact densities, Monte Carlo and separation scans for spiked random matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact eigenvalue density on a grid.
    Density {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo histogram compared with the exact density.
    Mc {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// 1 (real) or 2 (complex); exact comparison needs 2.
        #[arg(long, default_value_t = 2)]
        beta: u8,
        /// Bin count or `auto` (Freedman–Diaconis).
        #[arg(long, default_value = "101")]
        bins: String,
    },
    /// Separation-onset scan over spike values.
    Scan {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Comma-separated spike values: c in units of J/2 (shifted-gue,
        /// shifted-chiral) or b̃ (spiked-lue; 0 = no spike).
        #[arg(long, value_delimiter = ',', required = true)]
        spikes: Vec<f64>,
    },
    /// Reproduce one of the preset figures as CSV and SVG.
    Figure {
        name: String,
        #[arg(long, default_value = ".")]
        outdir: PathBuf,
        /// Monte Carlo trials where the figure has a histogram.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Skip Monte Carlo comparisons.
        #[arg(long)]
        no_mc: bool,
    },
    /// Run the oracle cross-check suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Also write the report CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelFamily {
    ShiftedGue,
    SpikedLue,
    ShiftedChiral,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: ModelFamily,
    /// Matrix size (shifted-gue).
    #[arg(long)]
    n: Option<usize>,
    /// Gram size (spiked-lue, shifted-chiral).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Spike rank.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Shift eigenvalue (shifted-gue) or singular value (shifted-chiral).
    #[arg(long)]
    c: Option<f64>,
    /// Inverse covariance spike (spiked-lue).
    #[arg(long)]
    btilde: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Grid as min:max:count (default: the model's natural window).
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Output files; `.svg` gives a plot, anything else CSV.
    #[arg(long)]
    out: Vec<PathBuf>,
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::Config(format!("--{flag} is required for this model")))
}

impl ModelArgs {
    /// The model; `spike_optional` allows omitting --c/--btilde (scans).
    fn build(&self, spike_optional: bool) -> Result<KernelModel, Error> {
        let spike = |v: Option<f64>, flag: &str, default: f64| {
            if spike_optional {
                Ok(v.unwrap_or(default))
            } else {
                required(v, flag)
            }
        };
        let model = match self.model {
            ModelFamily::ShiftedGue => {
                KernelModel::ShiftedGue { n: required(self.n, "n")?, r: self.r, c: spike(self.c, "c", 0.0)? }
            }
            ModelFamily::SpikedLue => KernelModel::SpikedLue {
                m: required(self.m, "m")?,
                alpha: self.alpha.unwrap_or(0.0),
                r: self.r,
                btilde: spike(self.btilde, "btilde", 1.0)?,
            },
            ModelFamily::ShiftedChiral => KernelModel::ShiftedChiral {
                m: required(self.m, "m")?,
                alpha: self.alpha.unwrap_or(0.0),
                r: self.r,
                c: spike(self.c, "c", 0.0)?,
            },
        };
        model.validate()?;
        Ok(model)
    }
}

fn print_report(prefix: &str, report: &ComparisonReport) {
    for (k, v) in report.to_header() {
        println!("{prefix}{}={v}", k.trim_start_matches("report."));
    }
}

fn base_config(kind: ExperimentKind, model: KernelModel, output: &OutputArgs) -> Result<ExperimentConfig, Error> {
    let mut config = ExperimentConfig::new(kind, model);
    if let Some(grid) = &output.grid {
        config.grid = parse_grid(grid)?;
    }
    config.outputs = output.out.clone();
    Ok(config)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Density { model, output } => {
            let config = base_config(ExperimentKind::Density, model.build(false)?, &output)?;
            let experiment = run_density_experiment(&config)?;
            write_outputs(&config, &experiment, &config.outputs)?;
            print_report("", &experiment.report);
        }
        Command::Mc { model, output, trials, seed, beta, bins } => {
            let mut config = base_config(ExperimentKind::Mc, model.build(false)?, &output)?;
            config.trials = trials;
            config.master_seed = seed;
            config.beta = Beta::from_index(beta)?;
            config.bins = match bins.as_str() {
                "auto" => BinSpec::Auto,
                b => BinSpec::Fixed(b.parse().map_err(|_| Error::Config(format!("--bins {b:?} is not a count")))?),
            };
            let experiment = run_density_experiment(&config)?;
            write_outputs(&config, &experiment, &config.outputs)?;
            print_report("", &experiment.report);
        }
        Command::Scan { model, output, spikes } => {
            let model = model.build(true)?;
            let mut config = base_config(ExperimentKind::Scan, model, &output)?;
            if output.grid.is_none() {
                config.grid = onset_grid(&model, &spikes, 241)?;
            }
            let points = run_onset_scan(&config, &spikes)?;
            let mut header = config.to_header();
            for point in &points {
                let label = format!("spike={}", point.spike);
                print_report(&format!("{label}."), &point.report);
                for (k, v) in point.report.to_header() {
                    header.push((k.replacen("report.", &format!("report.{label}."), 1), v));
                }
            }
            let curves: Vec<&DensityCurve> = points.iter().map(|p| &p.curve).collect();
            for path in &config.outputs {
                if path.extension().is_some_and(|e| e == "svg") {
                    harness::emit_svg(&curves, &harness::describe_model(&model), path)?;
                } else {
                    harness::emit_csv(&curves, &header, path)?;
                }
            }
        }
        Command::Figure { name, outdir, trials, seed, no_mc } => {
            let preset = FigurePreset::from_name(&name)?;
            let options = FigureOptions { trials, master_seed: seed, skip_monte_carlo: no_mc };
            let output = run_figure(preset, Some(&outdir), &options)?;
            for (label, report) in &output.reports {
                print_report(&format!("{label}."), report);
            }
            for file in &output.files {
                println!("wrote {}", file.display());
            }
        }
        Command::Verify { suite, out } => {
            let report = run_verify(Suite::from_name(&suite)?);
            let csv = report.to_csv();
            print!("{csv}");
            if let Some(path) = out {
                std::fs::write(&path, &csv).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
            }
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
