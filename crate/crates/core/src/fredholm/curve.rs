//! Gap-probability curves with the grid-refinement gate.

use serde::{Deserialize, Serialize};

use super::complex_trace::{complex_gap_trace, TraceGrid};
use super::edge::{EdgeGap, GridParams};
use super::finite_gap::finite_gap_real_even;
use super::limit_law::{limit_law_real_with, LimitFormula};
use crate::error::{Error, Result};
use crate::specialfn::ScalingConstants;

/// Largest change of any exported quantity from `nodes` to `2·nodes`.
pub const REFINEMENT_TOLERANCE: f64 = 1e-6;
/// Rounding slack allowed by the monotonicity scan.
pub const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GapMethod {
    Limit,
    FiniteEven,
    ComplexTrace,
    MonteCarlo,
}

impl GapMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            GapMethod::Limit => "limit",
            GapMethod::FiniteEven => "finite-even",
            GapMethod::ComplexTrace => "complex-trace",
            GapMethod::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub t: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapCurve {
    pub method: GapMethod,
    /// 0 for limit laws.
    pub n: u64,
    pub rows: Vec<GapRow>,
    pub nodes: usize,
    pub upper: f64,
    pub lower: f64,
}

impl GapCurve {
    /// Probabilities in [0, 1] and nondecreasing in t.
    pub fn check(&self) -> Result<()> {
        const OP: &str = "GapCurve::check";
        for r in &self.rows {
            if !(0.0..=1.0).contains(&r.probability) {
                return Err(Error::Invariant { op: OP, reason: format!("probability {} at t = {}", r.probability, r.t) });
            }
        }
        for w in self.rows.windows(2) {
            if w[1].t <= w[0].t {
                return Err(Error::Invariant { op: OP, reason: format!("t not increasing at {}", w[1].t) });
            }
            if w[1].probability < w[0].probability - MONOTONE_SLACK {
                return Err(Error::Invariant {
                    op: OP,
                    reason: format!(
                        "{} curve decreases from {} at t = {} to {} at t = {}",
                        self.method.as_str(),
                        w[0].probability,
                        w[0].t,
                        w[1].probability,
                        w[1].t
                    ),
                });
            }
        }
        Ok(())
    }
}

fn refined(op: &'static str, grid: GridParams, eval: impl Fn(GridParams) -> Result<EdgeGap>) -> Result<EdgeGap> {
    let coarse = eval(grid)?;
    let fine = eval(grid.doubled())?;
    let change = coarse.max_change(&fine);
    if !(change <= REFINEMENT_TOLERANCE) {
        return Err(Error::Refinement { op, change, tolerance: REFINEMENT_TOLERANCE });
    }
    Ok(coarse)
}

/// [`limit_law_real`] on `grid`, failing if doubling the nodes moves any
/// exported quantity by more than [`REFINEMENT_TOLERANCE`].
pub fn checked_limit_law_real(t: f64, grid: GridParams) -> Result<EdgeGap> {
    checked_limit_law_real_with(t, grid, LimitFormula::EdgeLimit)
}

pub fn checked_limit_law_real_with(t: f64, grid: GridParams, formula: LimitFormula) -> Result<EdgeGap> {
    refined("limit_law_real", grid, |g| limit_law_real_with(t, g, formula))
}

pub fn checked_finite_gap_real_even(n: u64, t: f64, grid: GridParams) -> Result<EdgeGap> {
    refined("finite_gap_real_even", grid, |g| finite_gap_real_even(n, t, g))
}

fn curve(method: GapMethod, n: u64, grid: GridParams, rows: Vec<GapRow>) -> Result<GapCurve> {
    let c = GapCurve { method, n, rows, nodes: grid.nodes, upper: grid.upper, lower: grid.lower };
    c.check()?;
    Ok(c)
}

pub fn limit_law_curve(ts: &[f64], grid: GridParams, formula: LimitFormula) -> Result<GapCurve> {
    let rows = ts
        .iter()
        .map(|&t| checked_limit_law_real_with(t, grid, formula).map(|g| GapRow { t, probability: g.probability }))
        .collect::<Result<_>>()?;
    curve(GapMethod::Limit, 0, grid, rows)
}

pub fn finite_gap_curve(n: u64, ts: &[f64], grid: GridParams) -> Result<GapCurve> {
    let rows = ts
        .iter()
        .map(|&t| checked_finite_gap_real_even(n, t, grid).map(|g| GapRow { t, probability: g.probability }))
        .collect::<Result<_>>()?;
    curve(GapMethod::FiniteEven, n, grid, rows)
}

/// exp(−tr S̃_n) over t. The grid metadata records the radial box [t, t + 40]
/// and the radial node count.
pub fn complex_trace_curve(n: u64, ts: &[f64], sc: &ScalingConstants, grid: TraceGrid) -> Result<GapCurve> {
    let rows = ts
        .iter()
        .map(|&t| complex_gap_trace(n, t, sc, grid).map(|c| GapRow { t, probability: c.probability }))
        .collect::<Result<_>>()?;
    let meta = GridParams { nodes: 16 * grid.radial_panels, upper: super::complex_trace::RADIAL_SPAN, lower: 0.0 };
    curve(GapMethod::ComplexTrace, n, meta, rows)
}
