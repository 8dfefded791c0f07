//! Empirical distribution tools: ECDF, histograms, Kolmogorov–Smirnov.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_sorted(op: &'static str, sorted: &[f64]) -> Result<()> {
    if sorted.is_empty() {
        return Err(Error::domain(op, "no samples"));
    }
    if sorted.iter().any(|v| v.is_nan()) {
        return Err(Error::domain(op, "samples contain NaN"));
    }
    if sorted.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain(op, "samples are not sorted"));
    }
    Ok(())
}

/// Fraction of sorted samples ≤ t.
pub fn ecdf_at(sorted: &[f64], t: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    sorted.partition_point(|&v| v <= t) as f64 / sorted.len() as f64
}

/// ECDF value with its binomial standard error √(p(1−p)/N).
pub fn ecdf_with_stderr(sorted: &[f64], t: f64) -> (f64, f64) {
    let p = ecdf_at(sorted, t);
    let n = sorted.len().max(1) as f64;
    (p, (p * (1.0 - p) / n).sqrt())
}

/// sup_x |ECDF(x) − F(x)| for sorted samples.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    check_sorted("ks_statistic", sorted)?;
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == x {
            j += 1;
        }
        let f = cdf(x);
        d = d.max((j as f64 / n - f).abs()).max((f - i as f64 / n).abs());
        i = j;
    }
    Ok(d.min(1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    /// Equal-width bins over [min, max] of the samples; the last bin is closed.
    pub fn from_sorted(sorted: &[f64], bins: usize) -> Result<Self> {
        check_sorted("Histogram::from_sorted", sorted)?;
        if bins == 0 {
            return Err(Error::domain("Histogram::from_sorted", "need at least one bin"));
        }
        let lo = sorted[0];
        let mut hi = *sorted.last().unwrap();
        if hi <= lo {
            hi = lo + 1.0;
        }
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|k| if k == bins { hi } else { lo + width * k as f64 }).collect();
        let mut counts = vec![0u64; bins];
        for &v in sorted {
            let k = (((v - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
        Ok(Self { edges, counts })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// count/(total·width) per bin.
    pub fn densities(&self) -> Vec<f64> {
        let total = self.total().max(1) as f64;
        self.counts
            .iter()
            .zip(self.edges.windows(2))
            .map(|(&c, e)| c as f64 / (total * (e[1] - e[0])))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ecdf_counts_ties() {
        let s = [1.0, 2.0, 2.0, 3.0];
        assert_eq!(ecdf_at(&s, 2.0), 0.75);
        assert_eq!(ecdf_at(&s, 0.0), 0.0);
        assert_eq!(ecdf_at(&s, 9.0), 1.0);
    }

    #[test]
    fn ks_extremes() {
        assert!(ks_statistic(&[], |x| x).is_err());
        assert!(ks_statistic(&[2.0, 1.0], |x| x).is_err());
        let constant = vec![0.5; 100];
        assert!(ks_statistic(&constant, |x| x.clamp(0.0, 1.0)).unwrap() >= 0.5);
        let grid: Vec<f64> = (0..1000).map(|k| (k as f64 + 0.5) / 1000.0).collect();
        assert!(ks_statistic(&grid, |x| x).unwrap() <= 0.5e-3 + 1e-12);
    }

    #[test]
    fn histogram_normalized() {
        let s: Vec<f64> = (0..1000).map(|k| (k as f64).sqrt()).collect();
        let h = Histogram::from_sorted(&s, 17).unwrap();
        assert_eq!(h.total(), 1000);
        let mass: f64 = h.densities().iter().zip(h.edges.windows(2)).map(|(d, e)| d * (e[1] - e[0])).sum();
        assert!((mass - 1.0).abs() < 1e-9);
    }
}
