//! Datasets behind figures 1-6.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::args::{RunConfig, SimStatistic};
use super::commands::{experiment, experiment_summary, histogram_record, metadata, statistic_values, NamedRecord};
use super::output::{Cell, OutputRecord, Schema};
use super::CliError;
use crate::ensemble::{eigenvalues, ks_statistic, sample_matrix, sample_stream, EnsembleKind, ExperimentResult};
use crate::fredholm::{gumbel_reference, GumbelLaw};

const BINS: usize = 60;
const SCATTER_MATRICES: u64 = 1000;

/// Experiments shared between figures, keyed by (kind, n).
struct Cache<'a> {
    config: &'a RunConfig,
    runs: BTreeMap<(u8, u64), ExperimentResult>,
}

impl<'a> Cache<'a> {
    fn get(&mut self, kind: EnsembleKind, n: u64) -> Result<&ExperimentResult, CliError> {
        let key = (kind as u8, n);
        if !self.runs.contains_key(&key) {
            let r = experiment(self.config, kind, n, self.config.samples)?;
            self.runs.insert(key, r);
        }
        Ok(&self.runs[&key])
    }
}

fn raw_histogram(config: &RunConfig, values: &[f64], fig: u8, extra: Value) -> Result<OutputRecord, CliError> {
    histogram_record(values, BINS, metadata(config, json!({"figure": fig, "data": extra})))
}

fn density_record(config: &RunConfig, law: GumbelLaw, lo: f64, hi: f64, fig: u8) -> OutputRecord {
    let mut r = OutputRecord::new(Schema::DensityCurve, metadata(config, json!({"figure": fig, "reference": law})));
    let steps = 200;
    for k in 0..=steps {
        let t = lo + (hi - lo) * k as f64 / steps as f64;
        r.rows.push(vec![Cell::Float(t), Cell::Float(law.density(t))]);
    }
    r
}

fn scaled_with_reference(
    config: &RunConfig,
    result: &ExperimentResult,
    statistic: SimStatistic,
    law: GumbelLaw,
    fig: u8,
    label: &str,
    out: &mut Vec<NamedRecord>,
) -> Result<(), CliError> {
    let values = statistic_values(result, statistic)?;
    let ks = ks_statistic(&values, |t| gumbel_reference(t, law))?;
    let mut summary = experiment_summary(result);
    summary["statistic"] = json!(statistic);
    summary["ks_reference"] = json!(law);
    summary["ks_distance"] = json!(ks);
    out.push(NamedRecord {
        name: format!("figure{fig}_{label}_n{}", result.key.n),
        record: raw_histogram(config, &values, fig, summary)?,
    });
    let (lo, hi) = (values[0].min(-3.0), values[values.len() - 1].max(6.0));
    out.push(NamedRecord { name: format!("figure{fig}_{label}_reference"), record: density_record(config, law, lo, hi, fig) });
    Ok(())
}

pub(crate) fn figures(config: &RunConfig) -> Result<Vec<NamedRecord>, CliError> {
    let mut cache = Cache { config, runs: BTreeMap::new() };
    let mut out = Vec::new();
    let which: Vec<u8> = match config.which {
        Some(w) => vec![w],
        None => (1..=6).collect(),
    };
    let n_main = config.n.unwrap_or(100);
    for fig in which {
        match fig {
            1 => {
                let sizes = config.n_list.clone().unwrap_or_else(|| vec![36, 64, 100]);
                for n in sizes {
                    let r = cache.get(EnsembleKind::Real, n)?;
                    let summary = experiment_summary(r);
                    out.push(NamedRecord {
                        name: format!("figure1_largest_complex_modulus_n{n}"),
                        record: raw_histogram(config, &r.largest_complex_modulus, 1, summary.clone())?,
                    });
                    out.push(NamedRecord {
                        name: format!("figure1_largest_real_n{n}"),
                        record: raw_histogram(config, &r.largest_real, 1, summary)?,
                    });
                }
            }
            2 => {
                let sizes = config.n_list.clone().unwrap_or_else(|| (5..=100).step_by(5).collect());
                let mut r = OutputRecord::new(Schema::ProportionTable, metadata(config, json!({"figure": 2})));
                for n in sizes {
                    let res = cache.get(EnsembleKind::Real, n)?;
                    r.rows.push(vec![
                        Cell::Int(n),
                        Cell::Int(res.samples),
                        Cell::Float(res.proportion_largest_real()),
                        Cell::Float(res.proportion_stderr()),
                    ]);
                }
                out.push(NamedRecord { name: "figure2_proportion_largest_real".into(), record: r });
            }
            3 => {
                let res = cache.get(EnsembleKind::Real, n_main)?.clone();
                let law = GumbelLaw::RealGinibreRadius;
                scaled_with_reference(config, &res, SimStatistic::LargestComplexModulus, law, 3, "scaled_largest_complex_modulus", &mut out)?;
                scaled_with_reference(config, &res, SimStatistic::SpectralRadius, law, 3, "scaled_spectral_radius", &mut out)?;
            }
            4 => {
                let n = n_main;
                let r = cache.get(EnsembleKind::Real, n)?;
                let summary = experiment_summary(r);
                for (label, values) in [("largest_complex_modulus", &r.largest_complex_modulus), ("largest_real", &r.largest_real)] {
                    out.push(NamedRecord {
                        name: format!("figure4_{label}_n{n}"),
                        record: raw_histogram(config, values, 4, summary.clone())?,
                    });
                    let cut = values[(values.len() * 9) / 10];
                    let tail: Vec<f64> = values.iter().copied().filter(|&v| v >= cut).collect();
                    out.push(NamedRecord {
                        name: format!("figure4_{label}_right_tail_n{n}"),
                        record: raw_histogram(config, &tail, 4, json!({"tail_from": cut}))?,
                    });
                }
            }
            5 => {
                let n = n_main as usize;
                let matrices = config.samples.min(SCATTER_MATRICES);
                let mut r = OutputRecord::new(Schema::Eigenvalues, metadata(config, json!({"figure": 5, "matrices": matrices})));
                for index in 0..matrices {
                    let m = sample_matrix(EnsembleKind::Real, n, &mut sample_stream(config.seed, index))?;
                    for z in eigenvalues(&m)? {
                        r.rows.push(vec![Cell::Int(index), Cell::Float(z.re), Cell::Float(z.im)]);
                    }
                }
                out.push(NamedRecord { name: format!("figure5_eigenvalues_n{n}"), record: r });
            }
            6 => {
                let res = cache.get(EnsembleKind::Complex, n_main)?.clone();
                let law = GumbelLaw::ComplexGinibreRadius;
                scaled_with_reference(config, &res, SimStatistic::SpectralRadius, law, 6, "complex_scaled_spectral_radius", &mut out)?;
            }
            _ => unreachable!("validated in RunConfig::resolve"),
        }
    }
    Ok(out)
}
