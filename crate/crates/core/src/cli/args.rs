//! Command-line flags, the `key = value` config file and their merge into a
//! validated [`RunConfig`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use super::CliError;
use crate::ensemble::EnsembleKind;
use crate::fredholm::{GridParams, LimitFormula};
use crate::specialfn::GammaMode;

#[derive(Debug, Parser)]
#[command(name = "ginibre", version, about = "Extremal eigenvalue laws of the real and complex Ginibre ensembles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Limit law of the largest real eigenvalue minus √n over a t-range.
    LimitLaw(Flags),
    /// Finite-n gap probability: real edge (even n: Fredholm, odd n: Monte
    /// Carlo with even-neighbor check) or complex edge (trace approximation).
    Gap(Flags),
    /// Monte Carlo simulation with ECDF or histogram output.
    Simulate(Flags),
    /// Datasets for figures 1-6 written into the --out directory.
    Figures(Flags),
    /// Pfaffian identity, incomplete gamma and grid-refinement suites.
    Selfcheck(Flags),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Matrix size [gap: required; simulate: 100; figures: per figure].
    #[arg(long)]
    pub n: Option<u64>,
    /// Monte Carlo samples [10000; figures with --full: 40000].
    #[arg(long)]
    pub samples: Option<u64>,
    /// Master seed [1].
    #[arg(long)]
    pub seed: Option<u64>,
    /// First t of the output grid [limit-law: -4; gap: √n - 3 (real), -2 (complex)].
    #[arg(long = "t-min", allow_negative_numbers = true)]
    pub t_min: Option<f64>,
    /// Last t of the output grid [limit-law: 4; gap: √n + 4 (real), 6 (complex)].
    #[arg(long = "t-max", allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    /// Spacing of the t grid [0.25].
    #[arg(long)]
    pub step: Option<f64>,
    /// A single t instead of a range.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Gauss-Legendre nodes on [t, t + L], 16..=512 [64].
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Truncation length of (t, ∞), at least 8 [12].
    #[arg(long = "L")]
    pub upper: Option<f64>,
    /// Truncation length of (-∞, t), at least 10 [12].
    #[arg(long = "L2")]
    pub lower: Option<f64>,
    /// implicit (root of γ²e^γ = n/2π) or asymptotic [implicit].
    #[arg(long = "gamma-mode")]
    pub gamma_mode: Option<String>,
    /// Output file (directory for figures) [stdout; figures: figures-out].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or json [csv].
    #[arg(long)]
    pub format: Option<String>,
    /// Worker threads [available parallelism].
    #[arg(long)]
    pub workers: Option<usize>,
    /// Paper-scale sample counts for figures.
    #[arg(long)]
    pub full: bool,
    /// real or complex [real].
    #[arg(long)]
    pub ensemble: Option<String>,
    /// simulate: largest-real, spectral-radius or largest-complex-modulus
    /// [largest-real for the real ensemble, spectral-radius otherwise].
    #[arg(long)]
    pub statistic: Option<String>,
    /// simulate: emit a histogram with this many bins instead of the ECDF.
    #[arg(long)]
    pub bins: Option<usize>,
    /// figures: which figure, 1..=6 [all].
    #[arg(long)]
    pub which: Option<u8>,
    /// figures 2: sizes as a:b (step 5), a:b:s or a comma list [5:100].
    #[arg(long = "n-list")]
    pub n_list: Option<String>,
    /// limit-law: edge-limit or standard-normal [edge-limit].
    #[arg(long)]
    pub formula: Option<String>,
    /// Config file of `key = value` lines; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const FILE_KEYS: &[&str] = &[
    "n", "samples", "seed", "t-min", "t-max", "step", "t", "nodes", "L", "L2", "gamma-mode", "out", "format",
    "workers", "full", "ensemble", "statistic", "bins", "which", "n-list", "formula",
];

fn parse_value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.trim().parse().map_err(|_| CliError::Config(format!("invalid value `{raw}` for key `{key}`")))
}

/// Parse a config file into the same shape as the flags.
pub fn parse_config_text(text: &str) -> Result<Flags, CliError> {
    let mut f = Flags::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!("line {}: expected `key = value`", lineno + 1)));
        };
        let (key, value) = (key.trim(), value.trim());
        if !FILE_KEYS.contains(&key) {
            return Err(CliError::Config(format!("line {}: unknown key `{key}`", lineno + 1)));
        }
        match key {
            "n" => f.n = Some(parse_value(key, value)?),
            "samples" => f.samples = Some(parse_value(key, value)?),
            "seed" => f.seed = Some(parse_value(key, value)?),
            "t-min" => f.t_min = Some(parse_value(key, value)?),
            "t-max" => f.t_max = Some(parse_value(key, value)?),
            "step" => f.step = Some(parse_value(key, value)?),
            "t" => f.t = Some(parse_value(key, value)?),
            "nodes" => f.nodes = Some(parse_value(key, value)?),
            "L" => f.upper = Some(parse_value(key, value)?),
            "L2" => f.lower = Some(parse_value(key, value)?),
            "gamma-mode" => f.gamma_mode = Some(value.to_string()),
            "out" => f.out = Some(PathBuf::from(value)),
            "format" => f.format = Some(value.to_string()),
            "workers" => f.workers = Some(parse_value(key, value)?),
            "full" => f.full = parse_value(key, value)?,
            "ensemble" => f.ensemble = Some(value.to_string()),
            "statistic" => f.statistic = Some(value.to_string()),
            "bins" => f.bins = Some(parse_value(key, value)?),
            "which" => f.which = Some(parse_value(key, value)?),
            "n-list" => f.n_list = Some(value.to_string()),
            "formula" => f.formula = Some(value.to_string()),
            _ => unreachable!("key list and match arms agree"),
        }
    }
    Ok(f)
}

pub fn read_config_file(path: &Path) -> Result<Flags, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config_text(&text)
}

impl Flags {
    /// Values from `self`, falling back to `file`.
    pub fn over(self, file: Flags) -> Flags {
        Flags {
            n: self.n.or(file.n),
            samples: self.samples.or(file.samples),
            seed: self.seed.or(file.seed),
            t_min: self.t_min.or(file.t_min),
            t_max: self.t_max.or(file.t_max),
            step: self.step.or(file.step),
            t: self.t.or(file.t),
            nodes: self.nodes.or(file.nodes),
            upper: self.upper.or(file.upper),
            lower: self.lower.or(file.lower),
            gamma_mode: self.gamma_mode.or(file.gamma_mode),
            out: self.out.or(file.out),
            format: self.format.or(file.format),
            workers: self.workers.or(file.workers),
            full: self.full || file.full,
            ensemble: self.ensemble.or(file.ensemble),
            statistic: self.statistic.or(file.statistic),
            bins: self.bins.or(file.bins),
            which: self.which.or(file.which),
            n_list: self.n_list.or(file.n_list),
            formula: self.formula.or(file.formula),
            config: self.config,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    LimitLaw,
    Gap,
    Simulate,
    Figures,
    Selfcheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimStatistic {
    LargestReal,
    SpectralRadius,
    LargestComplexModulus,
}

/// Inclusive t grid min, min + step, ... ≤ max.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TRange {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl TRange {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self, CliError> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) {
            return Err(CliError::Usage("t-range values must be finite".into()));
        }
        if !(step > 0.0) {
            return Err(CliError::Usage(format!("--step {step} must be positive")));
        }
        if max < min {
            return Err(CliError::Usage(format!("empty t-range: --t-min {min} exceeds --t-max {max}")));
        }
        Ok(Self { min, max, step })
    }

    pub fn single(t: f64) -> Self {
        Self { min: t, max: t, step: 1.0 }
    }

    pub fn values(&self) -> Vec<f64> {
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.min + k as f64 * self.step).collect()
    }
}

/// Fully resolved run settings. `workers` and `out` are left out of the
/// serialized echo so output bytes do not depend on them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<u64>,
    pub samples: u64,
    pub seed: u64,
    pub t_range: Option<TRange>,
    pub grid: GridParams,
    pub gamma_mode: GammaMode,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
    #[serde(skip)]
    pub workers: usize,
    pub full: bool,
    pub ensemble: EnsembleKind,
    pub statistic: Option<SimStatistic>,
    pub bins: Option<usize>,
    pub which: Option<u8>,
    pub n_list: Option<Vec<u64>>,
    pub formula: LimitFormula,
}

fn parse_n_list(raw: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Usage(format!("invalid --n-list `{raw}`"));
    let list: Vec<u64> = if raw.contains(':') {
        let parts: Vec<u64> = raw.split(':').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let (a, b, s) = match parts.as_slice() {
            [a, b] => (*a, *b, 5),
            [a, b, s] => (*a, *b, *s),
            _ => return Err(bad()),
        };
        if s == 0 || b < a {
            return Err(bad());
        }
        (a..=b).step_by(s as usize).collect()
    } else {
        raw.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if list.is_empty() || list.contains(&0) {
        return Err(bad());
    }
    Ok(list)
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl RunConfig {
    pub fn resolve(command: Command, f: Flags) -> Result<Self, CliError> {
        let usage = |m: String| CliError::Usage(m);
        let grid = GridParams {
            nodes: f.nodes.unwrap_or(64),
            upper: f.upper.unwrap_or(12.0),
            lower: f.lower.unwrap_or(12.0),
        };
        if !(GridParams::MIN_NODES..=GridParams::MAX_NODES).contains(&grid.nodes) {
            return Err(usage(format!("--nodes {} outside [16, 512]", grid.nodes)));
        }
        grid.validate("config").map_err(|e| usage(e.to_string()))?;
        let gamma_mode = match f.gamma_mode.as_deref() {
            None | Some("implicit") => GammaMode::Implicit,
            Some("asymptotic") => GammaMode::Asymptotic,
            Some(other) => return Err(usage(format!("unknown --gamma-mode `{other}`"))),
        };
        let format = match f.format.as_deref() {
            None | Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(other) => return Err(usage(format!("unknown --format `{other}`"))),
        };
        let ensemble = match f.ensemble.as_deref() {
            None | Some("real") => EnsembleKind::Real,
            Some("complex") => EnsembleKind::Complex,
            Some(other) => return Err(usage(format!("unknown --ensemble `{other}`"))),
        };
        let statistic = match f.statistic.as_deref() {
            None => None,
            Some("largest-real") => Some(SimStatistic::LargestReal),
            Some("spectral-radius") => Some(SimStatistic::SpectralRadius),
            Some("largest-complex-modulus") => Some(SimStatistic::LargestComplexModulus),
            Some(other) => return Err(usage(format!("unknown --statistic `{other}`"))),
        };
        let formula = match f.formula.as_deref() {
            None | Some("edge-limit") => LimitFormula::EdgeLimit,
            Some("standard-normal") => LimitFormula::StandardNormal,
            Some(other) => return Err(usage(format!("unknown --formula `{other}`"))),
        };
        let t_range = match (f.t, f.t_min, f.t_max) {
            (Some(t), None, None) => Some(TRange::new(t, t, f.step.unwrap_or(0.25)).map(|_| TRange::single(t))?),
            (Some(_), _, _) => return Err(usage("--t cannot be combined with --t-min/--t-max".into())),
            (None, None, None) => None,
            (None, lo, hi) => {
                let (lo, hi) = match (lo, hi) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(usage("--t-min and --t-max must be given together".into())),
                };
                Some(TRange::new(lo, hi, f.step.unwrap_or(0.25))?)
            }
        };
        if let Some(which) = f.which {
            if !(1..=6).contains(&which) {
                return Err(usage(format!("--which {which} outside 1..=6")));
            }
        }
        if f.samples == Some(0) {
            return Err(usage("--samples must be at least 1".into()));
        }
        if f.workers == Some(0) {
            return Err(usage("--workers must be at least 1".into()));
        }
        if f.n == Some(0) {
            return Err(usage("--n must be at least 1".into()));
        }
        if f.bins == Some(0) {
            return Err(usage("--bins must be at least 1".into()));
        }
        let n_list = f.n_list.as_deref().map(parse_n_list).transpose()?;
        Ok(RunConfig {
            command,
            n: f.n,
            samples: f.samples.unwrap_or(if f.full { 40_000 } else { 10_000 }),
            seed: f.seed.unwrap_or(1),
            t_range,
            grid,
            gamma_mode,
            out: f.out,
            format,
            workers: f.workers.unwrap_or_else(default_workers),
            full: f.full,
            ensemble,
            statistic,
            bins: f.bins,
            which: f.which,
            n_list,
            formula,
        })
    }
}

/// Parse argv (including the program name) and the optional config file.
pub fn parse_config(argv: &[String]) -> Result<RunConfig, CliError> {
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    let (command, flags) = match cli.command {
        CommandArgs::LimitLaw(f) => (Command::LimitLaw, f),
        CommandArgs::Gap(f) => (Command::Gap, f),
        CommandArgs::Simulate(f) => (Command::Simulate, f),
        CommandArgs::Figures(f) => (Command::Figures, f),
        CommandArgs::Selfcheck(f) => (Command::Selfcheck, f),
    };
    let file = match &flags.config {
        Some(path) => read_config_file(path)?,
        None => Flags::default(),
    };
    RunConfig::resolve(command, flags.over(file))
}
