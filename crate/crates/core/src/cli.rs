//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for input or validation errors (including
//! usage errors), 1 for internal failures. Machine-readable output goes to
//! stdout unless `--out` is given; diagnostics always go to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::calibrate::{
    fit_cwmcs, fit_scalar, CwmcsSource, FitConfig, Objective, TemperatureModel,
};
use crate::dataset::{BinningConfig, PredictionSet, ProbabilitySet, DEFAULT_BINS};
use crate::error::{Error, Result};
use crate::failure::{proportion_grid, risk_coverage};
use crate::io::{self, Format, PredictionFileSpec};
use crate::metrics::CalibrationReport;
use crate::report::{compare, reliability};

#[derive(Debug, Parser)]
#[command(
    name = "miscal",
    version,
    about = "Calibration metrics, temperature scaling and failure detection for classifier logits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
    Auto,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Jsonl => Format::Jsonl,
            FormatArg::Auto => Format::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GammaObjectiveArg {
    Ece,
    Wsece,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CwmcsSourceArg {
    Calibrated,
    Baseline,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Ts,
    CwmcsTs,
}

#[derive(Debug, Args)]
struct InputFormat {
    /// Prediction file format.
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct FitFlags {
    /// Number of equal-width confidence bins.
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    #[arg(long, default_value_t = 0.001)]
    gamma_step: f64,
    #[arg(long, value_enum, default_value = "ece")]
    gamma_objective: GammaObjectiveArg,
    /// Predictions the class-wise MCS is measured on before the gamma search.
    #[arg(long, value_enum, default_value = "calibrated")]
    cwmcs_source: CwmcsSourceArg,
    #[arg(long, default_value_t = 0.05)]
    t_lo: f64,
    #[arg(long, default_value_t = 10.0)]
    t_hi: f64,
    #[arg(long, default_value_t = 1e-4)]
    t_tol: f64,
}

impl FitFlags {
    fn config(&self) -> Result<FitConfig> {
        let defaults = FitConfig::default();
        let cfg = FitConfig {
            t_search_lo: self.t_lo,
            t_search_hi: self.t_hi,
            t_tolerance: self.t_tol,
            gamma_step: self.gamma_step,
            gamma_lo: -1.0 + self.gamma_step,
            gamma_hi: 1.0 - self.gamma_step,
            gamma_objective: match self.gamma_objective {
                GammaObjectiveArg::Ece => Objective::Ece,
                GammaObjectiveArg::Wsece => Objective::Wsece,
            },
            cwmcs_source: match self.cwmcs_source {
                CwmcsSourceArg::Calibrated => CwmcsSource::Calibrated,
                CwmcsSourceArg::Baseline => CwmcsSource::Baseline,
            },
            bins: BinningConfig::new(self.bins)?,
        };
        let cfg = if self.gamma_step == defaults.gamma_step {
            FitConfig {
                gamma_lo: defaults.gamma_lo,
                gamma_hi: defaults.gamma_hi,
                ..cfg
            }
        } else {
            cfg
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Calibration report of uncalibrated predictions (JSON).
    Metrics {
        #[arg(long)]
        test: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[command(flatten)]
        input: InputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit a temperature model on validation predictions.
    Fit {
        #[arg(long)]
        val: PathBuf,
        #[arg(long, value_enum, default_value = "ts")]
        method: Method,
        /// Where to write the fitted model (JSON).
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        fit: FitFlags,
        #[command(flatten)]
        input: InputFormat,
    },
    /// Calibration report of predictions after applying a fitted model (JSON).
    Apply {
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// Bin count; defaults to the one stored in the model.
        #[arg(long)]
        bins: Option<usize>,
        #[command(flatten)]
        input: InputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy-ranked risk-coverage curve (CSV).
    RiskCoverage {
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
        /// Referred proportions as start:stop:step.
        #[arg(long, default_value = "0:0.5:0.05")]
        proportions: String,
        #[command(flatten)]
        input: InputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reliability-diagram bins (CSV).
    Reliability {
        #[arg(long)]
        test: PathBuf,
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[command(flatten)]
        input: InputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit TS and cwMCS TS on --val and compare them with the baseline on --test (JSON).
    Compare {
        #[arg(long)]
        val: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[command(flatten)]
        fit: FitFlags,
        #[arg(long, default_value = "0:0.5:0.05")]
        proportions: String,
        #[command(flatten)]
        input: InputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Headline numbers with ECE, wsECE and accuracy in percent, plus the
/// full report in raw fractions.
#[derive(Debug, Serialize)]
pub struct MetricsOutput {
    pub accuracy_percent: f64,
    pub ece_percent: f64,
    pub wsece_percent: f64,
    pub mcs: f64,
    pub wsmcs: f64,
    pub report: CalibrationReport,
}

impl From<CalibrationReport> for MetricsOutput {
    fn from(report: CalibrationReport) -> Self {
        Self {
            accuracy_percent: report.accuracy * 100.0,
            ece_percent: report.ece * 100.0,
            wsece_percent: report.wsece * 100.0,
            mcs: report.mcs,
            wsmcs: report.wsmcs,
            report,
        }
    }
}

/// Parses a `start:stop:step` proportion grid.
pub fn parse_proportions(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<f64>, _>>();
    match (parts.len(), nums) {
        (3, Ok(v)) => proportion_grid(v[0], v[1], v[2]),
        _ => Err(Error::invalid(format!(
            "proportions must look like start:stop:step, got {spec:?}"
        ))),
    }
}

fn load(path: &Path, input: &InputFormat) -> Result<PredictionSet> {
    io::load_predictions(path, &PredictionFileSpec::with_format(input.format.into()))
}

fn check_model_classes(model: &TemperatureModel, pred: &PredictionSet, path: &Path) -> Result<()> {
    match model.num_classes() {
        Some(k) if k != pred.num_classes() => Err(Error::ClassCountMismatch {
            context: format!("model {}", path.display()),
            expected: pred.num_classes(),
            found: k,
        }),
        _ => Ok(()),
    }
}

fn calibrated_probs(pred: &PredictionSet, model: Option<&Path>) -> Result<ProbabilitySet> {
    match model {
        None => Ok(pred.softmax()),
        Some(path) => {
            let m = io::load_model(path)?;
            check_model_classes(&m, pred, path)?;
            m.apply(pred)
        }
    }
}

fn emit(out: Option<&Path>, contents: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, contents).map_err(|e| Error::io(path, e)),
        None => stdout
            .write_all(contents.as_bytes())
            .map_err(|e| Error::Serialize(format!("writing to stdout: {e}"))),
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Metrics {
            test,
            bins,
            input,
            out,
        } => {
            let pred = load(&test, &input)?;
            let report =
                CalibrationReport::from_probs(&pred.softmax(), &BinningConfig::new(bins)?)?;
            emit(
                out.as_deref(),
                &io::to_json(&MetricsOutput::from(report))?,
                stdout,
            )
        }
        Command::Fit {
            val,
            method,
            model,
            fit,
            input,
        } => {
            let cfg = fit.config()?;
            let pred = load(&val, &input)?;
            let fitted = match method {
                Method::Ts => fit_scalar(&pred, &cfg)?,
                Method::CwmcsTs => fit_cwmcs(&pred, &cfg)?,
            };
            io::save_model(&fitted, &model)?;
            let summary = match fitted.gamma() {
                None => format!(
                    "method=ts T={} objective={} value={}\n",
                    fitted.base_temperature(),
                    fitted.objective.name(),
                    fitted.fit_objective_value
                ),
                Some(gamma) => format!(
                    "method=cwmcs-ts T={} gamma={} objective={} value={}\n",
                    fitted.base_temperature(),
                    gamma,
                    fitted.objective.name(),
                    fitted.fit_objective_value
                ),
            };
            emit(None, &summary, stdout)
        }
        Command::Apply {
            test,
            model,
            bins,
            input,
            out,
        } => {
            let pred = load(&test, &input)?;
            let m = io::load_model(&model)?;
            check_model_classes(&m, &pred, &model)?;
            let bins = match bins {
                Some(b) => BinningConfig::new(b)?,
                None => m.bins,
            };
            let report = CalibrationReport::from_probs(&m.apply(&pred)?, &bins)?;
            emit(
                out.as_deref(),
                &io::to_json(&MetricsOutput::from(report))?,
                stdout,
            )
        }
        Command::RiskCoverage {
            test,
            model,
            proportions,
            input,
            out,
        } => {
            let grid = parse_proportions(&proportions)?;
            let pred = load(&test, &input)?;
            let probs = calibrated_probs(&pred, model.as_deref())?;
            let curve = risk_coverage(&probs, &grid)?;
            emit(out.as_deref(), &io::curve_to_csv(&curve), stdout)
        }
        Command::Reliability {
            test,
            model,
            bins,
            input,
            out,
        } => {
            let cfg = BinningConfig::new(bins)?;
            let pred = load(&test, &input)?;
            let probs = calibrated_probs(&pred, model.as_deref())?;
            emit(
                out.as_deref(),
                &io::reliability_to_csv(&reliability(&probs, &cfg)),
                stdout,
            )
        }
        Command::Compare {
            val,
            test,
            fit,
            proportions,
            input,
            out,
        } => {
            let cfg = fit.config()?;
            let grid = parse_proportions(&proportions)?;
            let val = load(&val, &input)?;
            let test = load(&test, &input)?;
            let report = compare(&val, &test, &cfg, &grid)?;
            emit(out.as_deref(), &io::to_json(&report)?, stdout)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                2
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
