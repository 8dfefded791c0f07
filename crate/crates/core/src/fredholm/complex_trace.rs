//! Trace of the rescaled complex-edge kernel over {|z| > t} and the gap
//! approximation exp(−trace).

use serde::{Deserialize, Serialize};

use super::quadrature::{composite_gauss_legendre, graded_gauss_legendre};
use crate::error::{ensure_finite, Error, Result};
use crate::kernels::complex_diag_radial_factor;
use crate::specialfn::{erfcx, ScalingConstants};

/// Radial extent of the integration box [t, t + RADIAL_SPAN].
pub const RADIAL_SPAN: f64 = 40.0;
/// Largest change of the trace under grid doubling that is accepted.
pub const TRACE_TOLERANCE: f64 = 1e-4;

const ORDER: usize = 16;

/// Tensor grid for the trace integral. The angular rule is graded toward
/// θ = 0 because Im Z·erfcx(√2 Im Z) switches on over a layer of width 1/|Z|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceGrid {
    pub radial_panels: usize,
    /// Angular panels per factor-two shell of the grading.
    pub angular_panels_per_shell: usize,
}

impl Default for TraceGrid {
    fn default() -> Self {
        Self { radial_panels: 40, angular_panels_per_shell: 1 }
    }
}

impl TraceGrid {
    pub fn doubled(&self) -> Self {
        Self { radial_panels: 2 * self.radial_panels, angular_panels_per_shell: 2 * self.angular_panels_per_shell }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexTrace {
    pub n: u64,
    pub t: f64,
    pub trace: f64,
    /// exp(−trace).
    pub probability: f64,
    /// |trace(grid) − trace(doubled grid)|.
    pub refinement_change: f64,
}

/// ∫_0^{π/2} ρ sin θ·erfcx(√2 ρ sin θ) dθ.
fn angular_integral(modulus: f64, panels_per_shell: usize) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut shells = vec![half_pi];
    let floor = 0.01 / modulus;
    while *shells.last().unwrap() > floor {
        let last = *shells.last().unwrap();
        shells.push(0.5 * last);
    }
    shells.push(0.0);
    shells.reverse();
    let mut edges = Vec::with_capacity(shells.len() * panels_per_shell);
    for pair in shells.windows(2) {
        for k in 0..panels_per_shell {
            edges.push(pair[0] + (pair[1] - pair[0]) * k as f64 / panels_per_shell as f64);
        }
    }
    edges.push(half_pi);
    graded_gauss_legendre(&edges, ORDER).integrate(|theta| {
        let im = modulus * theta.sin();
        im * erfcx(std::f64::consts::SQRT_2 * im)
    })
}

fn trace_on(n: u64, t: f64, sc: &ScalingConstants, grid: TraceGrid) -> Result<f64> {
    let radial = composite_gauss_legendre(t, t + RADIAL_SPAN, grid.radial_panels, ORDER)?;
    let gamma = sc.gamma();
    let mut total = 0.0;
    for (&r, &w) in radial.nodes.iter().zip(&radial.weights) {
        let modulus = sc.complex_modulus(r);
        if modulus <= 0.0 {
            return Err(Error::domain("complex_gap_trace", format!("modulus {modulus} at r = {r} is not positive")));
        }
        let radial_factor = complex_diag_radial_factor(n, modulus, gamma);
        if radial_factor == 0.0 {
            continue;
        }
        total += w * radial_factor * 2.0 * angular_integral(modulus, grid.angular_panels_per_shell);
    }
    Ok(total)
}

/// tr S̃_n over {r > t} and exp(−tr), with a doubling check on the grid.
pub fn complex_gap_trace(n: u64, t: f64, sc: &ScalingConstants, grid: TraceGrid) -> Result<ComplexTrace> {
    const OP: &str = "complex_gap_trace";
    ensure_finite(OP, "t", t)?;
    if n < 10 {
        return Err(Error::domain(OP, format!("n = {n} must be at least 10")));
    }
    if sc.n != n {
        return Err(Error::domain(OP, format!("scaling constants are for n = {}, not {n}", sc.n)));
    }
    if grid.radial_panels == 0 || grid.angular_panels_per_shell == 0 {
        return Err(Error::domain(OP, "grid panel counts must be positive"));
    }
    let coarse = trace_on(n, t, sc, grid)?;
    let fine = trace_on(n, t, sc, grid.doubled())?;
    let change = (fine - coarse).abs();
    if !(change <= TRACE_TOLERANCE) {
        return Err(Error::NoConvergence { op: OP, iterations: 2 });
    }
    Ok(ComplexTrace { n, t, trace: fine, probability: (-fine).exp(), refinement_change: change })
}
