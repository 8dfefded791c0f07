//! The limiting edge kernel T and the limits of the scaled rank-one functions.

use crate::specialfn::{erfc, erfcx};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// T(x, y) = (1/π)∫_0^∞ e^{−(x+u)²}e^{−(y+u)²} du
///         = e^{−(x−y)²/2}·erfc((x+y)/√2)/(2√(2π)).
pub fn limit_kernel_t(x: f64, y: f64) -> f64 {
    let s = (x + y) * std::f64::consts::FRAC_1_SQRT_2;
    if s >= 0.0 {
        // e^{−(x−y)²/2 − s²} = e^{−(x² + y²)}
        0.5 * FRAC_1_SQRT_2PI * erfcx(s) * (-(x * x + y * y)).exp()
    } else {
        let d = x - y;
        0.5 * FRAC_1_SQRT_2PI * (-0.5 * d * d).exp() * erfc(s)
    }
}

/// Total mass of [`limit_rank_one_density`], 1/√2.
pub const LIMIT_RANK_ONE_MASS: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Pointwise limit of ψ_n(√n + x): e^{−x²}/√(2π).
pub fn limit_rank_one_density(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-x * x).exp()
}

/// Pointwise limit of φ_n(√n + x): erfc(−x)/(2√2), the integral of
/// [`limit_rank_one_density`] from −∞ to x.
pub fn limit_rank_one_distribution(x: f64) -> f64 {
    erfc(-x) * 0.25 * std::f64::consts::SQRT_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_value_and_symmetry() {
        assert!((limit_kernel_t(0.0, 0.0) - 0.5 * FRAC_1_SQRT_2PI).abs() < 1e-16);
        assert_eq!(limit_kernel_t(1.0, 2.0), limit_kernel_t(2.0, 1.0));
        assert!(limit_kernel_t(-3.0, 4.0) > 0.0);
    }

    #[test]
    fn branches_agree_at_switch() {
        let a = limit_kernel_t(0.3, -0.3 + 1e-12);
        let b = limit_kernel_t(0.3, -0.3 - 1e-12);
        assert!((a - b).abs() < 1e-12);
    }
}
