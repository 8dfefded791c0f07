//! Pfaffians of real antisymmetric matrices and the determinant identity
//! det(I + JK) = Pf(J − K)².

use crate::error::{Error, Result};

/// Row-major square matrix of dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    pub dim: usize,
    pub entries: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![0.0; dim * dim] }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { dim, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Determinant by LU with partial pivoting; exactly 0 for a zero pivot
    /// column.
    pub fn determinant(&self) -> f64 {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n).max_by(|&r, &s| a[r * n + k].abs().total_cmp(&a[s * n + k].abs())).unwrap();
            if a[p * n + k] == 0.0 {
                return 0.0;
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                det = -det;
            }
            let pivot = a[k * n + k];
            det *= pivot;
            for r in k + 1..n {
                let f = a[r * n + k] / pivot;
                for c in k + 1..n {
                    a[r * n + c] -= f * a[k * n + c];
                }
            }
        }
        det
    }
}

/// [[0, I], [−I, 0]] of dimension 2m, the form J = [0 1; −1 0] ⊗ I.
pub fn symplectic_form(dim: usize) -> Result<SquareMatrix> {
    if dim % 2 == 1 {
        return Err(Error::domain("symplectic_form", format!("dimension {dim} is odd")));
    }
    let m = dim / 2;
    Ok(SquareMatrix::from_fn(dim, |i, j| {
        if i < m && j == i + m {
            1.0
        } else if i >= m && i == j + m {
            -1.0
        } else {
            0.0
        }
    }))
}

fn check_antisymmetric(op: &'static str, a: &SquareMatrix) -> Result<()> {
    if a.entries.len() != a.dim * a.dim {
        return Err(Error::domain(op, "entry count does not match the dimension"));
    }
    if let Some(bad) = a.entries.iter().find(|v| !v.is_finite()) {
        return Err(Error::domain(op, format!("non-finite entry {bad}")));
    }
    let scale = a.max_abs();
    let mut asym = 0.0f64;
    for i in 0..a.dim {
        for j in 0..a.dim {
            asym = asym.max((a.get(i, j) + a.get(j, i)).abs());
        }
    }
    if asym > 1e-12 * scale {
        return Err(Error::domain(op, format!("matrix is not antisymmetric (‖A + Aᵀ‖ = {asym:.3e})")));
    }
    Ok(())
}

/// Pf(A) by Householder tridiagonalization A = Q T Qᵀ; Pf(A) = det(Q)·Pf(T).
pub fn pfaffian(a: &SquareMatrix) -> Result<f64> {
    const OP: &str = "pfaffian";
    if a.dim % 2 == 1 {
        return Err(Error::domain(OP, format!("dimension {} is odd", a.dim)));
    }
    check_antisymmetric(OP, a)?;
    let n = a.dim;
    if n == 0 {
        return Ok(1.0);
    }
    let mut m = a.entries.clone();
    let at = |m: &Vec<f64>, i: usize, j: usize| m[i * n + j];
    let mut pf = 1.0;
    for i in 0..n.saturating_sub(2) {
        // Reflector zeroing A[i+2.., i].
        let x: Vec<f64> = (i + 1..n).map(|r| at(&m, r, i)).collect();
        let sigma: f64 = x[1..].iter().map(|v| v * v).sum();
        let (v, tau, alpha) = if sigma == 0.0 {
            (vec![0.0; x.len()], 0.0, x[0])
        } else {
            let norm = (x[0] * x[0] + sigma).sqrt();
            let mut v = x.clone();
            let alpha = if x[0] <= 0.0 {
                v[0] -= norm;
                norm
            } else {
                v[0] += norm;
                -norm
            };
            let vn = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            v.iter_mut().for_each(|c| *c /= vn);
            (v, 2.0, alpha)
        };
        m[(i + 1) * n + i] = alpha;
        m[i * n + i + 1] = -alpha;
        for r in i + 2..n {
            m[r * n + i] = 0.0;
            m[i * n + r] = 0.0;
        }
        if tau != 0.0 {
            let k = n - i - 1;
            let w: Vec<f64> = (0..k)
                .map(|r| tau * (0..k).map(|c| at(&m, i + 1 + r, i + 1 + c) * v[c]).sum::<f64>())
                .collect();
            for r in 0..k {
                for c in 0..k {
                    m[(i + 1 + r) * n + i + 1 + c] += v[r] * w[c] - w[r] * v[c];
                }
            }
            pf *= 1.0 - tau;
        }
        if i % 2 == 0 {
            pf *= -alpha;
        }
    }
    pf *= at(&m, n - 2, n - 1);
    Ok(pf)
}

/// |det(I + JK) − Pf(J − K)²| / max(1, |det(I + JK)|).
pub fn pfaffian_det_identity_check(k: &SquareMatrix, j: &SquareMatrix) -> Result<f64> {
    const OP: &str = "pfaffian_det_identity_check";
    if k.dim != j.dim {
        return Err(Error::domain(OP, format!("dimensions {} and {} differ", k.dim, j.dim)));
    }
    check_antisymmetric(OP, k)?;
    check_antisymmetric(OP, j)?;
    let n = k.dim;
    let lhs = SquareMatrix::from_fn(n, |r, c| {
        let jk: f64 = (0..n).map(|s| j.get(r, s) * k.get(s, c)).sum();
        if r == c { 1.0 + jk } else { jk }
    })
    .determinant();
    let pf = pfaffian(&SquareMatrix::from_fn(n, |r, c| j.get(r, c) - k.get(r, c)))?;
    Ok((lhs - pf * pf).abs() / lhs.abs().max(1.0))
}
