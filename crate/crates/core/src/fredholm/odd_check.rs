//! Odd-n consistency: correction norms plus a Monte Carlo sandwich between
//! the even neighbors n − 1 and n + 1.

use serde::{Deserialize, Serialize};

use super::curve::checked_finite_gap_real_even;
use super::edge::GridParams;
use crate::ensemble::{run_experiment, EnsembleKind, ExperimentConfig, Statistic};
use crate::error::{Error, Result};
use crate::kernels::{odd_correction_norms, OddCorrectionNorms};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OddCheckReport {
    pub n: u64,
    pub t: f64,
    pub norms: OddCorrectionNorms,
    pub samples: u64,
    pub monte_carlo: f64,
    pub monte_carlo_stderr: f64,
    pub even_below: f64,
    pub even_above: f64,
    /// 5 standard errors + 0.02.
    pub tolerance: f64,
    /// Monte Carlo value within `tolerance` of [min, max] of the even values.
    pub consistent: bool,
}

pub fn finite_gap_real_odd_check(
    n: u64,
    t: f64,
    samples: u64,
    seed: u64,
    workers: usize,
    grid: GridParams,
) -> Result<OddCheckReport> {
    const OP: &str = "finite_gap_real_odd_check";
    if n % 2 == 0 || n < 5 {
        return Err(Error::domain(OP, format!("n = {n} must be odd and at least 5")));
    }
    let norms = odd_correction_norms(n, t - (n as f64).sqrt(), grid.upper)?;
    let config = ExperimentConfig::new(EnsembleKind::Real, n as usize, samples, seed).with_statistics(&[Statistic::LargestReal]);
    let mc = run_experiment(&config, workers)?;
    let p = mc.largest_real_cdf(t);
    let se = (p * (1.0 - p) / mc.samples.max(1) as f64).sqrt();
    let below = checked_finite_gap_real_even(n - 1, t, grid)?.probability;
    let above = checked_finite_gap_real_even(n + 1, t, grid)?.probability;
    let tolerance = 5.0 * se + 0.02;
    let (lo, hi) = (below.min(above), below.max(above));
    let consistent = p >= lo - tolerance && p <= hi + tolerance;
    Ok(OddCheckReport {
        n,
        t,
        norms,
        samples: mc.samples,
        monte_carlo: p,
        monte_carlo_stderr: se,
        even_below: below,
        even_above: above,
        tolerance,
        consistent,
    })
}
