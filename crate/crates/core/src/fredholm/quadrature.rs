//! Gauss–Legendre grids.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Nodes and weights discretizing [a, b].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    pub a: f64,
    pub b: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// (nodes, weights) of the m-point rule on [−1, 1], nodes ascending.
fn legendre_rule(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { x } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = mf * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        if m == 1 {
            x = 0.0;
            dp = 1.0;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    (nodes, weights)
}

/// The m-point Gauss–Legendre rule mapped affinely to [a, b].
pub fn gauss_legendre_grid(a: f64, b: f64, m: usize) -> Result<QuadratureGrid> {
    composite_gauss_legendre(a, b, 1, m)
}

/// `panels` equal panels on [a, b], each carrying an m-point rule.
pub fn composite_gauss_legendre(a: f64, b: f64, panels: usize, m: usize) -> Result<QuadratureGrid> {
    const OP: &str = "gauss_legendre_grid";
    ensure_finite(OP, "a", a)?;
    ensure_finite(OP, "b", b)?;
    if !(a < b) {
        return Err(Error::domain(OP, format!("degenerate interval [{a}, {b}]")));
    }
    if m == 0 || panels == 0 {
        return Err(Error::domain(OP, "node and panel counts must be positive"));
    }
    let (ref_nodes, ref_weights) = legendre_rule(m);
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * m);
    let mut weights = Vec::with_capacity(panels * m);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let half = 0.5 * width;
        let mid = lo + half;
        for (x, w) in ref_nodes.iter().zip(&ref_weights) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    Ok(QuadratureGrid { a, b, nodes, weights })
}

/// Composite rule on [a, b] with panel edges from `edges` (ascending, first
/// = a, last = b) and m nodes per panel.
pub(crate) fn graded_gauss_legendre(edges: &[f64], m: usize) -> QuadratureGrid {
    let (ref_nodes, ref_weights) = legendre_rule(m);
    let mut nodes = Vec::with_capacity((edges.len() - 1) * m);
    let mut weights = Vec::with_capacity((edges.len() - 1) * m);
    for pair in edges.windows(2) {
        let half = 0.5 * (pair[1] - pair[0]);
        let mid = pair[0] + half;
        for (x, w) in ref_nodes.iter().zip(&ref_weights) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    QuadratureGrid { a: edges[0], b: *edges.last().unwrap(), nodes, weights }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_rule() {
        let g = gauss_legendre_grid(-1.0, 1.0, 1).unwrap();
        assert_eq!(g.nodes, vec![0.0]);
        assert!((g.weights[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_exactness() {
        let g = gauss_legendre_grid(-1.0, 1.0, 2).unwrap();
        assert!((g.integrate(|x| x * x) - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn weights_sum_and_order() {
        for m in [3usize, 16, 64, 127, 512] {
            let g = gauss_legendre_grid(-2.0, 5.0, m).unwrap();
            let s: f64 = g.weights.iter().sum();
            assert!((s - 7.0).abs() < 1e-12, "m = {m}");
            assert!(g.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(g.nodes[0] > -2.0 && g.nodes[m - 1] < 5.0);
        }
        assert!(gauss_legendre_grid(1.0, 1.0, 4).is_err());
        assert!(gauss_legendre_grid(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn polynomial_exactness() {
        for m in [4usize, 10, 33] {
            let g = gauss_legendre_grid(0.0, 1.0, m).unwrap();
            let deg = 2 * m - 1;
            let v = g.integrate(|x| x.powi(deg as i32));
            assert!((v - 1.0 / (deg as f64 + 1.0)).abs() < 1e-10);
        }
    }
}
