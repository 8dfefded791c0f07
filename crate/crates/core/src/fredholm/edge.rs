//! Shared assembly of the real-edge gap probability: a Fredholm determinant
//! of a symmetric kernel times the determinant of a rank-two correction.
//!
//! With χ the indicator of (t, ∞), the gap probability squared factors as
//! det(I − Kχ)·[(1 − ⟨χF, (I − χKχ)^{-1}f⟩)(1 − ½ρ₁) − ½((I − Kχ)^{-1}F(t) − F(∞))ρ₂]
//! where ρ₁ = ∫_{−∞}^t ((I − Kχ)^{-1} − I)(x, t) dx, ρ₂ = ∫_{−∞}^t (I − Kχ)^{-1}f and
//! (f, F) is a density and its distribution function. Used for both the
//! finite-n kernel and its n → ∞ limit.

use serde::{Deserialize, Serialize};

use super::operator::{fredholm_det, DiscreteOperator};
use super::quadrature::{composite_gauss_legendre, gauss_legendre_grid};
use crate::error::{ensure_finite, Error, Result};

/// Nyström grid parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    /// Gauss–Legendre nodes on [t, t + upper].
    pub nodes: usize,
    /// Truncation length of (t, ∞).
    pub upper: f64,
    /// Truncation length of (−∞, t).
    pub lower: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        Self { nodes: 64, upper: 12.0, lower: 12.0 }
    }
}

impl GridParams {
    pub const MIN_NODES: usize = 16;
    pub const MAX_NODES: usize = 512;

    pub fn validate(&self, op: &'static str) -> Result<()> {
        if self.nodes < Self::MIN_NODES {
            return Err(Error::domain(op, format!("nodes = {} below {}", self.nodes, Self::MIN_NODES)));
        }
        if !(self.upper >= 8.0) || !self.upper.is_finite() {
            return Err(Error::domain(op, format!("upper truncation L = {} must be at least 8", self.upper)));
        }
        if !(self.lower >= 10.0) || !self.lower.is_finite() {
            return Err(Error::domain(op, format!("lower truncation L2 = {} must be at least 10", self.lower)));
        }
        Ok(())
    }

    /// The same grid with twice the nodes.
    pub fn doubled(&self) -> Self {
        Self { nodes: 2 * self.nodes, ..*self }
    }
}

/// Every factor entering the real-edge gap probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeGap {
    pub t: f64,
    /// √(det_kernel·det_rank).
    pub probability: f64,
    /// det(I − Kχ).
    pub det_kernel: f64,
    /// Determinant of the rank-two correction.
    pub det_rank: f64,
    /// ⟨χF, (I − χKχ)^{-1}f⟩.
    pub inner_product: f64,
    /// (I − Kχ)^{-1}F(t) − F(∞).
    pub point_value: f64,
    pub rho1: f64,
    pub rho2: f64,
}

impl EdgeGap {
    /// Largest absolute change across all exported quantities.
    pub fn max_change(&self, other: &EdgeGap) -> f64 {
        [
            self.probability - other.probability,
            self.det_kernel - other.det_kernel,
            self.det_rank - other.det_rank,
        ]
        .iter()
        .fold(0.0f64, |m, d| m.max(d.abs()))
    }
}

/// The ingredients of one edge problem.
pub(crate) struct EdgeInputs<K, D, F> {
    pub kernel: K,
    pub density: D,
    pub distribution: F,
    pub distribution_at_infinity: f64,
    /// ∫_{−∞}^c f, the density mass left of the outer grid.
    pub density_mass_below: f64,
}

/// Panels of the outer grid on [t − L2, t]; each carries nodes/2 points.
const OUTER_PANELS: usize = 8;

pub(crate) fn assemble<K, D, F>(op_name: &'static str, t: f64, grid: GridParams, inputs: &EdgeInputs<K, D, F>) -> Result<EdgeGap>
where
    K: Fn(f64, f64) -> f64,
    D: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    ensure_finite(op_name, "t", t)?;
    let inner = gauss_legendre_grid(t, t + grid.upper, grid.nodes)?;
    let outer = composite_gauss_legendre(t - grid.lower, t, OUTER_PANELS, (grid.nodes / 2).max(8))?;
    let kernel = &inputs.kernel;
    let op = DiscreteOperator::from_symmetric_kernel(inner.clone(), kernel);
    let det_kernel = fredholm_det(&op)?;
    let solver = op.resolvent()?;

    let xs = &inner.nodes;
    let ws = &inner.weights;
    let dens: Vec<f64> = xs.iter().map(|&x| (inputs.density)(x)).collect();
    let dist: Vec<f64> = xs.iter().map(|&x| (inputs.distribution)(x)).collect();
    let column_t: Vec<f64> = xs.iter().map(|&x| kernel(x, t)).collect();

    let u = solver.solve(&dens)?;
    let s = solver.solve(&dist)?;
    let v = solver.solve(&column_t)?;

    let inner_product: f64 = (0..xs.len()).map(|i| ws[i] * dist[i] * u[i]).sum();
    let point_value = (inputs.distribution)(t)
        + (0..xs.len()).map(|j| column_t[j] * ws[j] * s[j]).sum::<f64>()
        - inputs.distribution_at_infinity;

    let wu: Vec<f64> = (0..xs.len()).map(|j| ws[j] * u[j]).collect();
    let wv: Vec<f64> = (0..xs.len()).map(|j| ws[j] * v[j]).collect();
    let mut rho1 = 0.0;
    let mut rho2 = inputs.density_mass_below;
    for (&x, &w) in outer.nodes.iter().zip(&outer.weights) {
        let mut r1 = kernel(x, t);
        let mut r2 = (inputs.density)(x);
        for j in 0..xs.len() {
            let k = kernel(x, xs[j]);
            r1 += k * wv[j];
            r2 += k * wu[j];
        }
        rho1 += w * r1;
        rho2 += w * r2;
    }

    let det_rank = (1.0 - inner_product) * (1.0 - 0.5 * rho1) - 0.5 * point_value * rho2;
    let product = det_kernel * det_rank;
    if !(det_kernel >= 0.0) || !(det_rank >= 0.0) || !product.is_finite() {
        return Err(Error::numerical(
            op_name,
            format!(
                "negative determinant factor at t = {t} (kernel {det_kernel:.3e}, rank part {det_rank:.3e}); refine the grid (more nodes, larger L, L2)"
            ),
        ));
    }
    let mut probability = product.sqrt();
    if probability > 1.0 {
        if probability > 1.0 + 1e-12 {
            return Err(Error::numerical(op_name, format!("probability {probability} exceeds 1 at t = {t}")));
        }
        probability = 1.0;
    }
    Ok(EdgeGap { t, probability, det_kernel, det_rank, inner_product, point_value, rho1, rho2 })
}
