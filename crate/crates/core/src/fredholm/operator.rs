//! Nyström discretization of integral operators: determinants and
//! resolvent solves.

use faer::linalg::solvers::{DenseSolveCore, PartialPivLu, Solve};
use faer::Mat;

use super::quadrature::QuadratureGrid;
use crate::error::{Error, Result};

/// Condition estimate above which resolvent solves are refused.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Kernel K discretized on a grid as W_ij = √(w_i w_j)·K(x_i, x_j).
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    pub grid: QuadratureGrid,
    /// Row-major m×m symmetrized matrix.
    pub matrix: Vec<f64>,
}

impl DiscreteOperator {
    pub fn from_kernel(grid: QuadratureGrid, kernel: impl Fn(f64, f64) -> f64) -> Self {
        let m = grid.len();
        let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
        let mut matrix = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                matrix[i * m + j] = sw[i] * sw[j] * kernel(grid.nodes[i], grid.nodes[j]);
            }
        }
        Self { grid, matrix }
    }

    /// Same as [`Self::from_kernel`] but evaluates only the upper triangle.
    pub fn from_symmetric_kernel(grid: QuadratureGrid, kernel: impl Fn(f64, f64) -> f64) -> Self {
        let m = grid.len();
        let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
        let mut matrix = vec![0.0; m * m];
        for i in 0..m {
            for j in i..m {
                let v = sw[i] * sw[j] * kernel(grid.nodes[i], grid.nodes[j]);
                matrix[i * m + j] = v;
                matrix[j * m + i] = v;
            }
        }
        Self { grid, matrix }
    }

    pub fn size(&self) -> usize {
        self.grid.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.size();
        (0..m).all(|i| (0..i).all(|j| self.matrix[i * m + j] == self.matrix[j * m + i]))
    }

    fn check_finite(&self, op: &'static str) -> Result<()> {
        if self.matrix.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::numerical(op, "operator matrix has non-finite entries"))
        }
    }

    /// I − W as a dense matrix.
    fn identity_minus(&self) -> Mat<f64> {
        let m = self.size();
        Mat::from_fn(m, m, |i, j| if i == j { 1.0 } else { 0.0 } - self.matrix[i * m + j])
    }

    /// I − W′ with W′_ij = K(x_i, x_j) w_j, the node-space operator.
    fn identity_minus_node_space(&self) -> Mat<f64> {
        let m = self.size();
        let w = &self.grid.weights;
        Mat::from_fn(m, m, |i, j| {
            let k = self.matrix[i * m + j] * (w[j] / w[i]).sqrt();
            if i == j {
                1.0 - k
            } else {
                -k
            }
        })
    }

    /// Node-space resolvent factorization, reusable across right-hand sides.
    pub fn resolvent(&self) -> Result<ResolventSolver> {
        const OP: &str = "resolvent_solve";
        self.check_finite(OP)?;
        let a = self.identity_minus_node_space();
        let lu = a.partial_piv_lu();
        let inv = lu.inverse();
        let norm1 = |m: &Mat<f64>| {
            (0..m.ncols()).map(|j| (0..m.nrows()).map(|i| m[(i, j)].abs()).sum::<f64>()).fold(0.0, f64::max)
        };
        let condition = norm1(&a) * norm1(&inv);
        if !condition.is_finite() || condition > CONDITION_LIMIT {
            return Err(Error::IllConditioned { op: OP, condition, limit: CONDITION_LIMIT });
        }
        Ok(ResolventSolver { a, lu, condition })
    }
}

/// Factorized I − W′ for repeated solves.
pub struct ResolventSolver {
    a: Mat<f64>,
    lu: PartialPivLu<f64>,
    pub condition: f64,
}

impl ResolventSolver {
    /// v with (I − W′)v = rhs; the residual is verified.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let m = self.a.nrows();
        if rhs.len() != m {
            return Err(Error::domain("resolvent_solve", format!("rhs has length {}, expected {m}", rhs.len())));
        }
        let b = Mat::from_fn(m, 1, |i, _| rhs[i]);
        let x = self.lu.solve(&b);
        let v: Vec<f64> = (0..m).map(|i| x[(i, 0)]).collect();
        let rhs_norm = rhs.iter().map(|r| r * r).sum::<f64>().sqrt();
        let mut res = 0.0;
        for i in 0..m {
            let mut s = -rhs[i];
            for j in 0..m {
                s += self.a[(i, j)] * v[j];
            }
            res += s * s;
        }
        if res.sqrt() > 1e-10 * rhs_norm.max(f64::MIN_POSITIVE) {
            return Err(Error::numerical(
                "resolvent_solve",
                format!("residual {:.3e} exceeds 1e-10·‖rhs‖", res.sqrt()),
            ));
        }
        Ok(v)
    }
}

/// det(I − W) for the symmetrized Nyström matrix.
pub fn fredholm_det(op: &DiscreteOperator) -> Result<f64> {
    const OP: &str = "fredholm_det";
    op.check_finite(OP)?;
    let det = op.identity_minus().as_ref().determinant();
    if !det.is_finite() {
        return Err(Error::numerical(OP, "determinant is not finite"));
    }
    Ok(det)
}

/// One-shot solve of (I − W′)v = rhs.
pub fn resolvent_solve(op: &DiscreteOperator, rhs: &[f64]) -> Result<Vec<f64>> {
    op.resolvent()?.solve(rhs)
}
