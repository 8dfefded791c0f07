//! Finite-n gap probability of the real spectrum, even n.

use super::edge::{assemble, EdgeGap, EdgeInputs, GridParams};
use crate::error::{Error, Result};
use crate::kernels::{finite_kernel_tn_any_sign, rank_one_functions};

/// P(no real eigenvalue of the n×n real Ginibre matrix exceeds t), n even.
///
/// The kernel part lives on [t, t + L]; the integrals over (−∞, t) are taken
/// on [t − L2, t], plus the exact ψ_n mass left of t − L2 (for even n, ψ_n is
/// odd and carries mass −∫_0^∞ψ_n on the negative axis).
pub fn finite_gap_real_even(n: u64, t: f64, grid: GridParams) -> Result<EdgeGap> {
    const OP: &str = "finite_gap_real_even";
    if n < 4 || n % 2 == 1 {
        return Err(Error::domain(OP, format!("n = {n} must be even and at least 4")));
    }
    grid.validate(OP)?;
    let rank_one = rank_one_functions(n)?;
    let inputs = EdgeInputs {
        kernel: |x: f64, y: f64| finite_kernel_tn_any_sign(n, x, y),
        density: |x: f64| rank_one.psi(x),
        distribution: |x: f64| rank_one.phi(x),
        distribution_at_infinity: rank_one.phi_infinity,
        density_mass_below: rank_one.psi_mass_below(t - grid.lower),
    };
    assemble(OP, t, grid, &inputs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_reference_at_n8() {
        let g = GridParams::default();
        let s8 = 8f64.sqrt();
        for (dt, p) in [(-1.0, 0.475_72), (-0.25, 0.701_95), (2.0, 0.998_51)] {
            let v = finite_gap_real_even(8, s8 + dt, g).unwrap();
            assert!((v.probability - p).abs() < 1e-4, "t = {}: {}", s8 + dt, v.probability);
        }
    }

    #[test]
    fn right_tail_and_guards() {
        let g = GridParams::default();
        let far = finite_gap_real_even(64, 8.0 + 10.0, g).unwrap();
        assert!(far.probability >= 0.9999);
        assert!(finite_gap_real_even(7, 3.0, g).is_err());
        assert!(finite_gap_real_even(2, 3.0, g).is_err());
    }
}
