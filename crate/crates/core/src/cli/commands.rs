//! Execution of each command into output records.

use std::io::Write as _;
use std::path::PathBuf;

use serde_json::{json, Value};

use super::args::{Command, RunConfig, SimStatistic, TRange};
use super::figures::figures;
use super::output::{write_atomic, Cell, OutputRecord, Schema};
use super::selfcheck::selfcheck;
use super::CliError;
use crate::ensemble::{
    ecdf_with_stderr, ks_statistic, run_experiment, sector_counts, EnsembleKind, ExperimentConfig, ExperimentResult,
    Histogram, Statistic,
};
use crate::fredholm::{
    checked_finite_gap_real_even, complex_trace_curve, finite_gap_curve, gumbel_reference, limit_law_curve,
    poisson_region_integral, GapCurve, GapMethod, GapRow, GumbelLaw, TraceGrid,
};
use crate::kernels::{limit_kernel_t, limit_rank_one_density, odd_correction_norms};
use crate::specialfn::scaling_constants;

/// A record with the file stem it is written under.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedRecord {
    pub name: String,
    pub record: OutputRecord,
}

pub(crate) fn metadata(config: &RunConfig, extra: Value) -> Value {
    json!({
        "tool": "ginibre",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "seed": config.seed,
        "details": extra,
    })
}

pub(crate) fn curve_record(curve: &GapCurve, meta: Value) -> OutputRecord {
    let mut r = OutputRecord::new(Schema::GapCurve, meta);
    for row in &curve.rows {
        r.rows.push(vec![
            Cell::Float(row.t),
            Cell::Float(row.probability),
            Cell::Text(curve.method.as_str().into()),
            Cell::Int(curve.n),
            Cell::Int(curve.nodes as u64),
            Cell::Float(curve.upper),
            Cell::Float(curve.lower),
        ]);
    }
    r
}

fn require_n(config: &RunConfig) -> Result<u64, CliError> {
    config.n.ok_or_else(|| CliError::Usage(format!("{:?} requires --n", config.command)))
}

fn single(name: &str, record: OutputRecord) -> Vec<NamedRecord> {
    vec![NamedRecord { name: name.into(), record }]
}

pub fn execute(config: &RunConfig) -> Result<Vec<NamedRecord>, CliError> {
    match config.command {
        Command::LimitLaw => limit_law(config),
        Command::Gap => gap(config),
        Command::Simulate => simulate(config),
        Command::Figures => figures(config),
        Command::Selfcheck => selfcheck(config),
    }
}

fn limit_law(config: &RunConfig) -> Result<Vec<NamedRecord>, CliError> {
    let ts = config.t_range.unwrap_or(TRange { min: -4.0, max: 4.0, step: 0.25 }).values();
    let curve = limit_law_curve(&ts, config.grid, config.formula)?;
    let g = config.grid;
    let upper_tail = ts.iter().map(|&t| limit_kernel_t(t + g.upper, t + g.upper)).fold(0.0, f64::max);
    let lower_tail = ts.iter().map(|&t| limit_rank_one_density(t - g.lower)).fold(0.0, f64::max);
    let meta = metadata(
        config,
        json!({
            "method": "limit",
            "truncation_bounds": {"kernel_diagonal_at_t_plus_L": upper_tail, "density_at_t_minus_L2": lower_tail},
            "refinement": "every value agrees with the doubled-node grid to 1e-6",
        }),
    );
    Ok(single("limit-law", curve_record(&curve, meta)))
}

fn gap(config: &RunConfig) -> Result<Vec<NamedRecord>, CliError> {
    let n = require_n(config)?;
    match config.ensemble {
        EnsembleKind::Real if n % 2 == 0 => {
            let root = (n as f64).sqrt();
            let start = (root - 3.0).max(0.5 * root);
    let ts = config.t_range.unwrap_or(TRange { min: start, max: root + 4.0, step: 0.25 }).values();
            let curve = finite_gap_curve(n, &ts, config.grid)?;
            let meta = metadata(config, json!({"method": "finite-even"}));
            Ok(single("gap", curve_record(&curve, meta)))
        }
        EnsembleKind::Real => odd_gap(config, n),
        EnsembleKind::Complex => {
            let sc = scaling_constants(n)?.with_mode(config.gamma_mode)?;
            let ts = config.t_range.unwrap_or(TRange { min: -2.0, max: 6.0, step: 0.5 }).values();
            let curve = complex_trace_curve(n, &ts, &sc, TraceGrid::default())?;
            let meta = metadata(
                config,
                json!({
                    "method": "complex-trace",
                    "t_coordinate": "r = √(4γ)(|z| − √n − √(γ/4))",
                    "gamma": sc.gamma(),
                    "limit": ts.iter().map(|&t| (-0.5 * (-t).exp()).exp()).collect::<Vec<_>>(),
                }),
            );
            Ok(single("gap", curve_record(&curve, meta)))
        }
    }
}

/// Odd n: Monte Carlo curve, with the even neighbors and correction norms in
/// the metadata.
fn odd_gap(config: &RunConfig, n: u64) -> Result<Vec<NamedRecord>, CliError> {
    if n < 5 {
        return Err(CliError::Usage(format!("odd n = {n} must be at least 5")));
    }
    let root = (n as f64).sqrt();
    let start = (root - 3.0).max(0.5 * root);
    let ts = config.t_range.unwrap_or(TRange { min: start, max: root + 4.0, step: 0.25 }).values();
    let exp = ExperimentConfig::new(EnsembleKind::Real, n as usize, config.samples, config.seed)
        .with_statistics(&[Statistic::LargestReal]);
    let mc = run_experiment(&exp, config.workers)?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for &t in &ts {
        let p = mc.largest_real_cdf(t);
        let se = (p * (1.0 - p) / mc.samples as f64).sqrt();
        let below = checked_finite_gap_real_even(n - 1, t, config.grid)?.probability;
        let above = checked_finite_gap_real_even(n + 1, t, config.grid)?.probability;
        let tol = 5.0 * se + 0.02;
        let consistent = p >= below.min(above) - tol && p <= below.max(above) + tol;
        checks.push(json!({"t": t, "monte_carlo": p, "stderr": se, "even_below": below, "even_above": above, "consistent": consistent}));
        rows.push(GapRow { t, probability: p });
    }
    let norms = odd_correction_norms(n, ts[0].max(0.5 * root) - root, config.grid.upper)?;
    let curve = GapCurve { method: GapMethod::MonteCarlo, n, rows, nodes: 0, upper: 0.0, lower: 0.0 };
    curve.check()?;
    let meta = metadata(
        config,
        json!({"method": "monte-carlo", "samples": mc.samples, "even_neighbors": checks, "correction_norms": norms,
               "rng": mc.rng, "gaussian_sampler": mc.gaussian_sampler}),
    );
    Ok(single("gap", curve_record(&curve, meta)))
}

pub(crate) fn experiment(config: &RunConfig, kind: EnsembleKind, n: u64, samples: u64) -> Result<ExperimentResult, CliError> {
    let mut exp = ExperimentConfig::new(kind, n as usize, samples, config.seed).with_statistics(&[
        Statistic::SpectralRadius,
        Statistic::LargestReal,
        Statistic::LargestComplexModulus,
        Statistic::ScaledPoints,
    ]);
    exp.gamma_mode = config.gamma_mode;
    let result = run_experiment(&exp, config.workers)?;
    if result.parity_violations > 0 {
        return Err(CliError::Check(format!("{} samples violate real-count parity", result.parity_violations)));
    }
    Ok(result)
}

pub(crate) fn experiment_summary(result: &ExperimentResult) -> Value {
    let full_sector = sector_counts(result, 0.0, &[(0.0, std::f64::consts::PI)]).ok().map(|v| v[0]);
    json!({
        "samples": result.samples,
        "proportion_largest_real": result.proportion_largest_real(),
        "proportion_stderr": result.proportion_stderr(),
        "real_count_mean": result.real_count_mean(),
        "real_count_variance": result.real_count_variance(),
        "parity_violations": result.parity_violations,
        "eigensolver_failures": result.eigensolver_failures.len(),
        "backward_checks": result.backward_checks,
        "max_backward_error": result.max_backward_error,
        "full_sector_mean_count_above_0": full_sector,
        "full_sector_poisson_prediction": poisson_region_integral(0.0, 0.0, std::f64::consts::PI).ok(),
        "rng": result.rng,
        "gaussian_sampler": result.gaussian_sampler,
    })
}

/// Sorted values of a simulate statistic in its edge coordinate.
pub(crate) fn statistic_values(result: &ExperimentResult, statistic: SimStatistic) -> Result<Vec<f64>, CliError> {
    let root = (result.key.n as f64).sqrt();
    Ok(match statistic {
        SimStatistic::LargestReal => result.largest_real.iter().map(|v| v - root).collect(),
        SimStatistic::SpectralRadius => result.scaled_spectral_radius()?,
        SimStatistic::LargestComplexModulus => result.scaled_largest_complex_modulus()?,
    })
}

fn simulate(config: &RunConfig) -> Result<Vec<NamedRecord>, CliError> {
    let n = config.n.unwrap_or(100);
    let result = experiment(config, config.ensemble, n, config.samples)?;
    let statistic = config.statistic.unwrap_or(match config.ensemble {
        EnsembleKind::Real => SimStatistic::LargestReal,
        EnsembleKind::Complex => SimStatistic::SpectralRadius,
    });
    let values = statistic_values(&result, statistic)?;
    if values.is_empty() {
        return Err(CliError::Usage(format!("statistic {statistic:?} has no samples for this ensemble")));
    }
    let reference = match (config.ensemble, statistic) {
        (EnsembleKind::Complex, SimStatistic::SpectralRadius | SimStatistic::LargestComplexModulus) => {
            Some(GumbelLaw::ComplexGinibreRadius)
        }
        (EnsembleKind::Real, SimStatistic::SpectralRadius | SimStatistic::LargestComplexModulus) => {
            Some(GumbelLaw::RealGinibreRadius)
        }
        _ => None,
    };
    let ks = match reference {
        Some(law) => Some(ks_statistic(&values, |t| gumbel_reference(t, law))?),
        None => None,
    };
    let mut summary = experiment_summary(&result);
    summary["statistic"] = json!(statistic);
    summary["coordinate"] = json!(match statistic {
        SimStatistic::LargestReal => "x − √n",
        _ => "r = √(4γ)(|z| − √n − √(γ/4))",
    });
    summary["ks_reference"] = json!(reference);
    summary["ks_distance"] = json!(ks);
    let meta = metadata(config, summary);
    let record = match config.bins {
        Some(bins) => histogram_record(&values, bins, meta)?,
        None => {
            let ts = config.t_range.unwrap_or(TRange { min: -4.0, max: 4.0, step: 0.25 }).values();
            let mut r = OutputRecord::new(Schema::Ecdf, meta);
            for t in ts {
                let (p, se) = if statistic == SimStatistic::LargestReal {
                    let p = result.largest_real_cdf(t + (n as f64).sqrt());
                    (p, (p * (1.0 - p) / result.samples as f64).sqrt())
                } else {
                    ecdf_with_stderr(&values, t)
                };
                r.rows.push(vec![Cell::Float(t), Cell::Float(p), Cell::Float(se)]);
            }
            r
        }
    };
    Ok(single("simulate", record))
}

pub(crate) fn histogram_record(sorted: &[f64], bins: usize, meta: Value) -> Result<OutputRecord, CliError> {
    let h = Histogram::from_sorted(sorted, bins)?;
    let mut r = OutputRecord::new(Schema::Histogram, meta);
    for ((e, &c), d) in h.edges.windows(2).zip(&h.counts).zip(h.densities()) {
        r.rows.push(vec![Cell::Float(e[0]), Cell::Float(e[1]), Cell::Int(c), Cell::Float(d)]);
    }
    Ok(r)
}

/// Write records: figures go into a directory, everything else to --out or stdout.
pub(crate) fn emit(config: &RunConfig, records: &[NamedRecord]) -> Result<(), CliError> {
    for r in records {
        r.record.check()?;
    }
    let ext = match config.format {
        super::Format::Csv => "csv",
        super::Format::Json => "json",
    };
    if config.command == Command::Figures {
        let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("figures-out"));
        std::fs::create_dir_all(&dir).map_err(|e| CliError::Io { path: dir.clone(), source: e })?;
        for r in records {
            write_atomic(&dir.join(format!("{}.{ext}", r.name)), &r.record.render(config.format))?;
        }
        return Ok(());
    }
    let text: String = records.iter().map(|r| r.record.render(config.format)).collect();
    match &config.out {
        Some(path) => write_atomic(path, &text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io { path: PathBuf::from("<stdout>"), source: e }),
    }
}
