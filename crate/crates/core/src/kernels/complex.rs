//! The complex-plane kernel S_n of the real Ginibre ensemble and its bulk
//! model S_κ.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::specialfn::{erfcx, reg_gamma_q, trunc_exp_complex, ScalingConstants};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Largest n accepted by [`complex_offdiag_sn`].
pub const COMPLEX_KERNEL_MAX_N: u64 = 2000;

/// Edge coordinates (r, θ) of a point in the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub r: f64,
    pub theta: f64,
}

impl ComplexPoint {
    /// Z_n(r, θ) = (√n + √(γ/4) + r/√(4γ))e^{iθ}.
    pub fn embed(&self, sc: &ScalingConstants) -> Result<Complex64> {
        check_angle(self.theta)?;
        let modulus = sc.complex_modulus(self.r);
        if modulus <= 0.0 {
            return Err(Error::domain("ComplexPoint::embed", format!("embedded modulus {modulus} is not positive")));
        }
        Ok(Complex64::from_polar(modulus, self.theta))
    }
}

fn check_angle(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::domain("complex kernel", format!("θ = {theta} must lie in (0, π)")));
    }
    Ok(())
}

/// The θ-independent factor (|Z|/√γ)·Q(n−1, |Z|²)/√(2π) of the diagonal.
pub(crate) fn complex_diag_radial_factor(n: u64, modulus: f64, gamma: f64) -> f64 {
    FRAC_1_SQRT_2PI * modulus / gamma.sqrt() * reg_gamma_q((n - 1) as f64, modulus * modulus)
}

/// Diagonal of the rescaled kernel,
/// S̃_n(r,θ; r,θ) = (1/√(2π))(|Z|/√γ)·Im Z·erfcx(√2 Im Z)·Q(n−1, |Z|²).
pub fn complex_diag_sn(n: u64, r: f64, theta: f64, sc: &ScalingConstants) -> Result<f64> {
    ensure_finite("complex_diag_sn", "r", r)?;
    if n < 2 {
        return Err(Error::domain("complex_diag_sn", "n must be at least 2"));
    }
    let z = ComplexPoint { r, theta }.embed(sc)?;
    let modulus = z.norm();
    Ok(complex_diag_radial_factor(n, modulus, sc.gamma()) * z.im * erfcx(std::f64::consts::SQRT_2 * z.im))
}

/// ln φ(z) = ½ ln erfc(√2 |Im z|).
fn ln_phi(z: Complex64) -> f64 {
    let a = std::f64::consts::SQRT_2 * z.im.abs();
    0.5 * (erfcx(a).ln() - a * a)
}

/// S_n(z, w) = (i/√(2π)) e^{−(z−w̄)²/2}(w̄ − z)φ(z)φ(w)e^{−zw̄}𝔢_{n−2}(zw̄).
pub fn complex_offdiag_sn(n: u64, z: Complex64, w: Complex64) -> Result<Complex64> {
    const OP: &str = "complex_offdiag_sn";
    for (name, v) in [("z.re", z.re), ("z.im", z.im), ("w.re", w.re), ("w.im", w.im)] {
        ensure_finite(OP, name, v)?;
    }
    if !(2..=COMPLEX_KERNEL_MAX_N).contains(&n) {
        return Err(Error::domain(OP, format!("n = {n} outside [2, {COMPLEX_KERNEL_MAX_N}]")));
    }
    if z.im == 0.0 || w.im == 0.0 {
        return Err(Error::domain(OP, "points must lie off the real axis"));
    }
    let wb = w.conj();
    let d = z - wb;
    let expo = -d * d * 0.5 + ln_phi(z) + ln_phi(w);
    let tail = trunc_exp_complex(n - 2, z * wb)?;
    Ok(Complex64::i() * FRAC_1_SQRT_2PI * (wb - z) * expo.exp() * tail)
}

/// S_κ(r,θ; s,η) = (κ/2π)·e^{−(r+s)/2}/((1+κ)e^{i(θ−η)} − 1).
pub fn s_kappa(kappa: f64, r: f64, s: f64, theta: f64, eta: f64) -> Result<Complex64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::domain("s_kappa", format!("κ = {kappa} must be positive")));
    }
    let denom = Complex64::from_polar(1.0 + kappa, theta - eta) - 1.0;
    Ok(kappa / (2.0 * std::f64::consts::PI) * (-(r + s) / 2.0).exp() / denom)
}
