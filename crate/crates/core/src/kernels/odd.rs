//! Odd-n consistency checks: the skew-orthogonal normalization identities,
//! the two routes to S_n, and the size of the odd-n correction terms.

use serde::{Deserialize, Serialize};

use super::finite::finite_kernel_tn;
use super::rank_one::rank_one_functions;
use crate::error::{Error, Result};
use crate::specialfn::{ln_gamma, reg_gamma_p, reg_gamma_q};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const SAMPLES: usize = 20;

/// Maximum residuals of the three odd-n identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OddIdentityReport {
    pub n: u64,
    /// max_j |(s_{2j}/r_j)·2^{j+1}j! − 1|.
    pub duplication: f64,
    /// max_y |2Σ_j (s_{2j}/r_j) e^{−y²/2}y^{2j} − e^{−y²/2}𝔢_{J−1}(y²/2)|.
    pub partial_sum: f64,
    /// max relative gap between the closed form of S_n and its expansion
    /// through S_{n−1} before the integration by parts.
    pub expansion: f64,
}

impl OddIdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.duplication.max(self.partial_sum).max(self.expansion)
    }
}

fn check_odd(op: &'static str, n: u64, lo: u64) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::domain(op, format!("n = {n} must be odd")));
    }
    if n < lo {
        return Err(Error::domain(op, format!("n = {n} must be at least {lo}")));
    }
    Ok(())
}

/// ln(s_{2j}/r_j) with s_{2j} = 2^{j+½}Γ(j+½) and r_j = 2√(2π)(2j)!.
fn ln_normalizer_ratio(j: u64) -> f64 {
    let jf = j as f64;
    (jf + 0.5) * std::f64::consts::LN_2 + ln_gamma(jf + 0.5)
        - std::f64::consts::LN_2
        - LN_SQRT_2PI
        - ln_gamma(2.0 * jf + 1.0)
}

/// ∫_0^y u^k e^{−u²/2} du for y ≥ 0, on a log scale.
fn ln_moment_integral(k: u64, y: f64) -> f64 {
    let a = 0.5 * (k as f64 + 1.0);
    (a - 1.0) * std::f64::consts::LN_2 + ln_gamma(a) + reg_gamma_p(a, 0.5 * y * y).ln()
}

/// x^k e^{−x²/2}/(√(2π) j!) on a log scale, x > 0.
fn ln_edge_weight(x: f64, k: u64, fact: u64) -> f64 {
    k as f64 * x.ln() - 0.5 * x * x - LN_SQRT_2PI - ln_gamma(fact as f64 + 1.0)
}

/// Deterministic sample points spread over (0, √n + 3).
fn sample_points(n: u64, phase: f64) -> Vec<f64> {
    let span = (n as f64).sqrt() + 3.0;
    (0..SAMPLES).map(|i| span * ((i as f64 + phase) / SAMPLES as f64)).collect()
}

/// Residuals of the odd-n identities, 3 ≤ n ≤ 201.
pub fn odd_n_identities(n: u64) -> Result<OddIdentityReport> {
    const OP: &str = "odd_n_identities";
    check_odd(OP, n, 3)?;
    if n > 201 {
        return Err(Error::domain(OP, format!("n = {n} exceeds 201")));
    }
    let big_j = (n - 1) / 2;

    let mut duplication = 0.0f64;
    for j in 0..big_j {
        let lhs = ln_normalizer_ratio(j);
        let rhs = -((j + 1) as f64 * std::f64::consts::LN_2 + ln_gamma(j as f64 + 1.0));
        duplication = duplication.max(((lhs - rhs).exp() - 1.0).abs());
    }

    let mut partial_sum = 0.0f64;
    for y in sample_points(n, 0.5) {
        let lhs: f64 = (0..big_j)
            .map(|j| 2.0 * (ln_normalizer_ratio(j) + 2.0 * j as f64 * y.ln() - 0.5 * y * y).exp())
            .sum();
        let rhs = reg_gamma_q(big_j as f64, 0.5 * y * y);
        partial_sum = partial_sum.max((lhs - rhs).abs());
    }

    let mut expansion = 0.0f64;
    let xs = sample_points(n, 0.3);
    let ys = sample_points(n, 0.8);
    for (i, &x) in xs.iter().enumerate() {
        let y = ys[SAMPLES - 1 - i];
        let d = x - y;
        let gauss = (-0.5 * d * d).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let closed = gauss * reg_gamma_q((n - 1) as f64, x * y)
            + (ln_edge_weight(x, n - 1, n - 2) + ln_moment_integral(n - 2, y)).exp();
        let expanded = gauss * reg_gamma_q((n - 2) as f64, x * y)
            + (ln_edge_weight(x, n - 2, n - 3) + ln_moment_integral(n - 3, y)).exp()
            + (ln_edge_weight(x, n - 1, n - 2) + ln_moment_integral(n - 2, y)).exp()
            - (ln_edge_weight(x, n - 2, n - 2) + ln_moment_integral(n - 1, y)).exp();
        let scale = closed.abs().max(expanded.abs());
        if scale > 0.0 {
            expansion = expansion.max((closed - expanded).abs() / scale);
        }
    }

    Ok(OddIdentityReport { n, duplication, partial_sum, expansion })
}

/// Sup-norms of the odd-n correction terms on the edge window [t, t + L]
/// (shifted by √n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OddCorrectionNorms {
    pub n: u64,
    /// sup |T_n − T_{n−1}| over the window square.
    pub d_t: f64,
    /// sup |ψ_n − ψ_{n−1}|.
    pub d_psi: f64,
    /// sup |φ_n − φ_{n−1}|.
    pub d_phi: f64,
    /// sup |φ_n + εψ_n|. With ε(f)(x) = ½∫sgn(y−x)f(y)dy the ε-image of ψ_n is
    /// close to −φ_n on the edge, so this is the vanishing combination.
    pub d_phi_vs_epspsi: f64,
}

/// Correction norms for odd n ≥ 5 on the window [t, t + window].
pub fn odd_correction_norms(n: u64, t: f64, window: f64) -> Result<OddCorrectionNorms> {
    const OP: &str = "odd_correction_norms";
    check_odd(OP, n, 5)?;
    if !(window > 0.0) {
        return Err(Error::domain(OP, "window length must be positive"));
    }
    let shift = (n as f64).sqrt();
    if shift + t <= 0.0 {
        return Err(Error::domain(OP, "window must lie right of the origin after the shift"));
    }
    const GRID: usize = 61;
    let pts: Vec<f64> = (0..GRID).map(|i| shift + t + window * i as f64 / (GRID - 1) as f64).collect();
    let cur = rank_one_functions(n)?;
    let prev = rank_one_functions(n - 1)?;
    let mut d_t = 0.0f64;
    for &x in &pts {
        for &y in &pts {
            let diff = finite_kernel_tn(n, x, y)? - finite_kernel_tn(n - 1, x, y)?;
            d_t = d_t.max(diff.abs());
        }
    }
    let sup = |f: &dyn Fn(f64) -> f64| pts.iter().map(|&x| f(x).abs()).fold(0.0, f64::max);
    Ok(OddCorrectionNorms {
        n,
        d_t,
        d_psi: sup(&|x| cur.psi(x) - prev.psi(x)),
        d_phi: sup(&|x| cur.phi(x) - prev.phi(x)),
        d_phi_vs_epspsi: sup(&|x| cur.phi(x) + cur.eps_psi(x)),
    })
}
