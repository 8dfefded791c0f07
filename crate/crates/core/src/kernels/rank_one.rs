//! The rank-one part φ_n ⊗ ψ_n of the real kernel and the ε-image of ψ_n.

use crate::error::{Error, Result};
use crate::specialfn::{ln_gamma, reg_gamma_p, reg_gamma_q};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// ψ_n(x) = κ′_n x^{n−1}e^{−x²/2} and φ_n(x) = κ_n ∫_0^x u^{n−2}e^{−u²/2} du,
/// with κ_n = √(n^{1/2}/(√(2π)(n−2)!)), κ′_n = √(n^{−1/2}/(√(2π)(n−2)!)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOneFunctions {
    pub n: u64,
    pub ln_kappa: f64,
    pub ln_kappa_prime: f64,
    /// φ_n(∞) = κ_n 2^{(n−3)/2}Γ((n−1)/2).
    pub phi_infinity: f64,
    /// ∫_0^∞ ψ_n = κ′_n 2^{(n−2)/2}Γ(n/2).
    pub psi_half_mass: f64,
}

/// Build the rank-one functions for n ≥ 3.
pub fn rank_one_functions(n: u64) -> Result<RankOneFunctions> {
    if n < 3 {
        return Err(Error::domain("rank_one_functions", format!("n = {n} must be at least 3")));
    }
    let nf = n as f64;
    let ln_base = -LN_SQRT_2PI - ln_gamma(nf - 1.0);
    let ln_kappa = 0.5 * (0.5 * nf.ln() + ln_base);
    let ln_kappa_prime = 0.5 * (-0.5 * nf.ln() + ln_base);
    let ln2 = std::f64::consts::LN_2;
    let phi_infinity = (ln_kappa + 0.5 * (nf - 3.0) * ln2 + ln_gamma(0.5 * (nf - 1.0))).exp();
    let psi_half_mass = (ln_kappa_prime + 0.5 * (nf - 2.0) * ln2 + ln_gamma(0.5 * nf)).exp();
    Ok(RankOneFunctions { n, ln_kappa, ln_kappa_prime, phi_infinity, psi_half_mass })
}

impl RankOneFunctions {
    fn odd_order(&self) -> bool {
        self.n % 2 == 1
    }

    /// (−1)^{n−1}, the parity of ψ_n and of φ_n.
    fn parity(&self) -> f64 {
        if self.odd_order() {
            1.0
        } else {
            -1.0
        }
    }

    pub fn psi(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let mag = (self.ln_kappa_prime + (self.n - 1) as f64 * x.abs().ln() - 0.5 * x * x).exp();
        if x > 0.0 {
            mag
        } else {
            self.parity() * mag
        }
    }

    pub fn phi(&self, x: f64) -> f64 {
        let mag = self.phi_infinity * reg_gamma_p(0.5 * (self.n - 1) as f64, 0.5 * x * x);
        if x >= 0.0 {
            mag
        } else {
            self.parity() * mag
        }
    }

    /// ∫_{−∞}^∞ ψ_n: zero for even n, twice the half mass for odd n.
    pub fn psi_total_mass(&self) -> f64 {
        if self.odd_order() {
            2.0 * self.psi_half_mass
        } else {
            0.0
        }
    }

    /// ∫_{−∞}^x ψ_n.
    pub fn psi_mass_below(&self, x: f64) -> f64 {
        let a = 0.5 * self.n as f64;
        let h = self.psi_half_mass;
        if self.odd_order() {
            if x >= 0.0 {
                h + h * reg_gamma_p(a, 0.5 * x * x)
            } else {
                h * reg_gamma_q(a, 0.5 * x * x)
            }
        } else {
            -h * reg_gamma_q(a, 0.5 * x * x)
        }
    }

    /// ϕ_n(x) = (εψ_n)(x) = ½∫sgn(y − x)ψ_n(y)dy = ½∫ψ_n − ∫_{−∞}^x ψ_n.
    pub fn eps_psi(&self, x: f64) -> f64 {
        let a = 0.5 * self.n as f64;
        let h = self.psi_half_mass;
        if self.odd_order() {
            let s = if x >= 0.0 { 1.0 } else { -1.0 };
            -s * h * reg_gamma_p(a, 0.5 * x * x)
        } else {
            h * reg_gamma_q(a, 0.5 * x * x)
        }
    }
}
