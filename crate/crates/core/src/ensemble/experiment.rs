//! Deterministic, mergeable Monte Carlo experiments.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sample::{backward_error, eigenvalues, sample_matrix, sample_stream, EnsembleKind, GAUSSIAN_SAMPLER, RNG_DESCRIPTION};
use super::stats::ecdf_at;
use super::summary::{spectrum_summary, ScaledPoint, SpectrumSummary};
use crate::error::{Error, Result};
use crate::specialfn::{scaling_constants, GammaMode, ScalingConstants};

/// Every STRIDE-th sample also gets an eigenpair backward-error check.
pub const BACKWARD_CHECK_STRIDE: u64 = 64;
pub const BACKWARD_CHECK_PAIRS: usize = 3;
pub const BACKWARD_ERROR_LIMIT: f64 = 1e-8;
/// A run fails when eigensolver failures exceed this fraction of samples.
pub const MAX_FAILURE_FRACTION: f64 = 1e-4;

/// Per-sample arrays to retain. Counts (largest-is-real, real-count moments,
/// parity) are always kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    SpectralRadius,
    LargestReal,
    LargestComplexModulus,
    ScaledPoints,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: EnsembleKind,
    pub n: usize,
    pub seed: u64,
    /// Sample indices first_index .. first_index + samples are drawn.
    pub first_index: u64,
    pub samples: u64,
    pub gamma_mode: GammaMode,
    pub statistics: Vec<Statistic>,
    /// Scaled points with r′ below this are dropped.
    pub point_floor: f64,
}

impl ExperimentConfig {
    pub fn new(kind: EnsembleKind, n: usize, samples: u64, seed: u64) -> Self {
        Self {
            kind,
            n,
            seed,
            first_index: 0,
            samples,
            gamma_mode: GammaMode::Implicit,
            statistics: vec![Statistic::SpectralRadius, Statistic::LargestReal, Statistic::LargestComplexModulus],
            point_floor: -4.0,
        }
    }

    pub fn with_statistics(mut self, statistics: &[Statistic]) -> Self {
        self.statistics = statistics.to_vec();
        self
    }

    fn keeps(&self, s: Statistic) -> bool {
        self.statistics.contains(&s)
    }
}

/// The fields two results must share to be merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentKey {
    pub kind: EnsembleKind,
    pub n: usize,
    pub seed: u64,
    pub gamma_mode: GammaMode,
    pub statistics: Vec<Statistic>,
    pub point_floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePoints {
    pub index: u64,
    pub points: Vec<ScaledPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub key: ExperimentKey,
    /// Successful samples.
    pub samples: u64,
    /// Merge lineage: disjoint half-open index ranges covered, ascending.
    pub index_ranges: Vec<(u64, u64)>,
    pub spectral_radius: Vec<f64>,
    /// Largest real eigenvalue of the samples that have one.
    pub largest_real: Vec<f64>,
    pub largest_complex_modulus: Vec<f64>,
    pub largest_is_real: u64,
    pub without_real: u64,
    pub real_count_sum: u64,
    pub real_count_sq_sum: u64,
    pub parity_violations: u64,
    /// One entry per successful sample when scaled points are kept.
    pub points: Vec<SamplePoints>,
    pub eigensolver_failures: Vec<u64>,
    pub backward_checks: u64,
    pub max_backward_error: f64,
    pub rng: String,
    pub gaussian_sampler: String,
}

fn validate_config(config: &ExperimentConfig) -> Result<ScalingConstants> {
    const OP: &str = "run_experiment";
    if config.samples == 0 {
        return Err(Error::domain(OP, "samples must be at least 1"));
    }
    if config.n == 0 {
        return Err(Error::domain(OP, "n must be at least 1"));
    }
    if config.first_index.checked_add(config.samples).is_none() {
        return Err(Error::domain(OP, "sample index range overflows"));
    }
    let mut sc = scaling_constants(config.n.max(2) as u64)?;
    if config.gamma_mode != GammaMode::Implicit {
        sc = sc.with_mode(config.gamma_mode)?;
    }
    Ok(sc)
}

struct SampleOutcome {
    summary: Option<SpectrumSummary>,
    backward: Option<f64>,
}

fn run_sample(config: &ExperimentConfig, sc: &ScalingConstants, index: u64) -> SampleOutcome {
    let mut rng = sample_stream(config.seed, index);
    let Ok(m) = sample_matrix(config.kind, config.n, &mut rng) else {
        return SampleOutcome { summary: None, backward: None };
    };
    let Ok(eigs) = eigenvalues(&m) else {
        return SampleOutcome { summary: None, backward: None };
    };
    let backward = if index % BACKWARD_CHECK_STRIDE == 0 {
        match backward_error(&m, BACKWARD_CHECK_PAIRS, &mut rng) {
            Ok(e) if e <= BACKWARD_ERROR_LIMIT => Some(e),
            _ => return SampleOutcome { summary: None, backward: None },
        }
    } else {
        None
    };
    SampleOutcome { summary: Some(spectrum_summary(&eigs, sc)), backward }
}

impl ExperimentResult {
    /// A result covering no samples, the identity for [`merge_results`].
    pub fn empty(config: &ExperimentConfig) -> Self {
        Self {
            key: ExperimentKey {
                kind: config.kind,
                n: config.n,
                seed: config.seed,
                gamma_mode: config.gamma_mode,
                statistics: config.statistics.clone(),
                point_floor: config.point_floor,
            },
            samples: 0,
            index_ranges: Vec::new(),
            spectral_radius: Vec::new(),
            largest_real: Vec::new(),
            largest_complex_modulus: Vec::new(),
            largest_is_real: 0,
            without_real: 0,
            real_count_sum: 0,
            real_count_sq_sum: 0,
            parity_violations: 0,
            points: Vec::new(),
            eigensolver_failures: Vec::new(),
            backward_checks: 0,
            max_backward_error: 0.0,
            rng: RNG_DESCRIPTION.to_string(),
            gaussian_sampler: GAUSSIAN_SAMPLER.to_string(),
        }
    }

    fn keeps(&self, s: Statistic) -> bool {
        self.key.statistics.contains(&s)
    }

    pub fn proportion_largest_real(&self) -> f64 {
        self.largest_is_real as f64 / self.samples.max(1) as f64
    }

    /// Binomial standard error of [`Self::proportion_largest_real`].
    pub fn proportion_stderr(&self) -> f64 {
        let p = self.proportion_largest_real();
        (p * (1.0 - p) / self.samples.max(1) as f64).sqrt()
    }

    pub fn real_count_mean(&self) -> f64 {
        self.real_count_sum as f64 / self.samples.max(1) as f64
    }

    pub fn real_count_variance(&self) -> f64 {
        let n = self.samples.max(1) as f64;
        let mean = self.real_count_mean();
        (self.real_count_sq_sum as f64 / n - mean * mean).max(0.0)
    }

    /// P(max real eigenvalue ≤ t), counting spectra without real eigenvalues
    /// as below every t.
    pub fn largest_real_cdf(&self, t: f64) -> f64 {
        let below = self.largest_real.partition_point(|&v| v <= t) as u64;
        (below + self.without_real) as f64 / self.samples.max(1) as f64
    }

    /// The scaled spectral radius √(4γ)(R − √n − √(γ/4)), sorted.
    pub fn scaled_spectral_radius(&self) -> Result<Vec<f64>> {
        let sc = self.scaling()?;
        Ok(self.spectral_radius.iter().map(|&r| sc.complex_fluctuation(r)).collect())
    }

    /// The same scaling applied to the largest complex modulus, sorted.
    pub fn scaled_largest_complex_modulus(&self) -> Result<Vec<f64>> {
        let sc = self.scaling()?;
        Ok(self.largest_complex_modulus.iter().map(|&r| sc.complex_fluctuation(r)).collect())
    }

    pub fn scaling(&self) -> Result<ScalingConstants> {
        let sc = scaling_constants(self.key.n.max(2) as u64)?;
        if self.key.gamma_mode == GammaMode::Implicit { Ok(sc) } else { sc.with_mode(self.key.gamma_mode) }
    }

    /// Fraction of samples with spectral radius ≤ t (unscaled).
    pub fn spectral_radius_cdf(&self, t: f64) -> f64 {
        ecdf_at(&self.spectral_radius, t)
    }
}

/// Run the samples first_index .. first_index + samples on `workers` threads.
/// The result does not depend on `workers`.
pub fn run_experiment(config: &ExperimentConfig, workers: usize) -> Result<ExperimentResult> {
    let sc = validate_config(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::numerical("run_experiment", format!("worker pool: {e}")))?;
    let start = config.first_index;
    let end = start + config.samples;
    let outcomes: Vec<SampleOutcome> =
        pool.install(|| (start..end).into_par_iter().map(|i| run_sample(config, &sc, i)).collect());

    let mut result = ExperimentResult::empty(config);
    result.index_ranges.push((start, end));
    let parity = config.n % 2;
    for (offset, outcome) in outcomes.into_iter().enumerate() {
        let index = start + offset as u64;
        let Some(s) = outcome.summary else {
            result.eigensolver_failures.push(index);
            continue;
        };
        if let Some(e) = outcome.backward {
            result.backward_checks += 1;
            result.max_backward_error = result.max_backward_error.max(e);
        }
        result.samples += 1;
        let rc = s.real_count as u64;
        result.real_count_sum += rc;
        result.real_count_sq_sum += rc * rc;
        if config.kind == EnsembleKind::Real && s.real_count % 2 != parity {
            result.parity_violations += 1;
        }
        if s.largest_is_real {
            result.largest_is_real += 1;
        }
        if config.keeps(Statistic::SpectralRadius) {
            result.spectral_radius.push(s.spectral_radius);
        }
        match s.largest_real {
            Some(v) if config.keeps(Statistic::LargestReal) => result.largest_real.push(v),
            Some(_) => {}
            None => result.without_real += 1,
        }
        if let Some(v) = s.largest_complex_modulus.filter(|_| config.keeps(Statistic::LargestComplexModulus)) {
            result.largest_complex_modulus.push(v);
        }
        if config.keeps(Statistic::ScaledPoints) {
            let points = s.scaled_upper_half_points.into_iter().filter(|p| p.r >= config.point_floor).collect();
            result.points.push(SamplePoints { index, points });
        }
    }
    let failures = result.eigensolver_failures.len() as f64;
    if failures > MAX_FAILURE_FRACTION * config.samples as f64 {
        let index = result.eigensolver_failures[0];
        return Err(Error::Eigensolver { seed: config.seed, index });
    }
    for v in [&mut result.spectral_radius, &mut result.largest_real, &mut result.largest_complex_modulus] {
        v.sort_by(f64::total_cmp);
    }
    Ok(result)
}

fn merge_sorted(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].total_cmp(&b[j]).is_le() {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Combine results over disjoint index ranges of the same experiment.
pub fn merge_results(a: &ExperimentResult, b: &ExperimentResult) -> Result<ExperimentResult> {
    if a.key != b.key {
        return Err(Error::Merge(format!("configurations differ: {:?} vs {:?}", a.key, b.key)));
    }
    let mut ranges: Vec<(u64, u64)> = a.index_ranges.iter().chain(&b.index_ranges).copied().collect();
    ranges.sort_unstable();
    if ranges.windows(2).any(|w| w[1].0 < w[0].1) {
        return Err(Error::Merge("sample index ranges overlap".into()));
    }
    let mut points: Vec<SamplePoints> = a.points.iter().chain(&b.points).cloned().collect();
    points.sort_by_key(|p| p.index);
    let mut failures: Vec<u64> = a.eigensolver_failures.iter().chain(&b.eigensolver_failures).copied().collect();
    failures.sort_unstable();
    Ok(ExperimentResult {
        key: a.key.clone(),
        samples: a.samples + b.samples,
        index_ranges: ranges,
        spectral_radius: merge_sorted(&a.spectral_radius, &b.spectral_radius),
        largest_real: merge_sorted(&a.largest_real, &b.largest_real),
        largest_complex_modulus: merge_sorted(&a.largest_complex_modulus, &b.largest_complex_modulus),
        largest_is_real: a.largest_is_real + b.largest_is_real,
        without_real: a.without_real + b.without_real,
        real_count_sum: a.real_count_sum + b.real_count_sum,
        real_count_sq_sum: a.real_count_sq_sum + b.real_count_sq_sum,
        parity_violations: a.parity_violations + b.parity_violations,
        points,
        eigensolver_failures: failures,
        backward_checks: a.backward_checks + b.backward_checks,
        max_backward_error: a.max_backward_error.max(b.max_backward_error),
        rng: a.rng.clone(),
        gaussian_sampler: a.gaussian_sampler.clone(),
    })
}

fn check_sectors(sectors: &[(f64, f64)]) -> Result<()> {
    for &(a, b) in sectors {
        if !(0.0 <= a && a < b && b <= std::f64::consts::PI) {
            return Err(Error::domain("sector_counts", format!("sector ({a}, {b}) is outside [0, π]")));
        }
    }
    Ok(())
}

/// Per-sample counts of scaled points with r′ > t and θ₁ ≤ θ′ < θ₂, one row
/// per sample in index order.
pub fn sector_counts_per_sample(result: &ExperimentResult, t: f64, sectors: &[(f64, f64)]) -> Result<Vec<Vec<u64>>> {
    check_sectors(sectors)?;
    if !result.keeps(Statistic::ScaledPoints) {
        return Err(Error::domain("sector_counts", "scaled points were not collected"));
    }
    if t < result.key.point_floor {
        return Err(Error::domain(
            "sector_counts",
            format!("t = {t} is below the retained point floor {}", result.key.point_floor),
        ));
    }
    Ok(result
        .points
        .iter()
        .map(|s| {
            sectors
                .iter()
                .map(|&(a, b)| s.points.iter().filter(|p| p.r > t && p.theta >= a && p.theta < b).count() as u64)
                .collect()
        })
        .collect())
}

/// Mean number of scaled points with r′ > t in each sector.
pub fn sector_counts(result: &ExperimentResult, t: f64, sectors: &[(f64, f64)]) -> Result<Vec<f64>> {
    let rows = sector_counts_per_sample(result, t, sectors)?;
    let n = rows.len().max(1) as f64;
    Ok((0..sectors.len()).map(|k| rows.iter().map(|r| r[k]).sum::<u64>() as f64 / n).collect())
}
