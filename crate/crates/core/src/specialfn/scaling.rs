//! Edge scaling constants γ_n and the centerings/scales built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which γ_n feeds the complex-edge centering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaMode {
    /// Root of γ²e^γ = n/(2π).
    #[default]
    Implicit,
    /// ln(n/(2π(ln n)²)).
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingConstants {
    pub n: u64,
    /// ln(n/(2π(ln n)²)); negative for n below about 165.
    pub gamma_asymptotic: f64,
    /// Solution of γ²e^γ = n/(2π).
    pub gamma_implicit: f64,
    /// √n + √(γ/4) for the selected γ.
    pub center_complex: f64,
    /// √(4γ) for the selected γ.
    pub scale_complex: f64,
    /// √n.
    pub center_real: f64,
    pub mode: GammaMode,
}

impl ScalingConstants {
    /// The γ selected by `mode`.
    pub fn gamma(&self) -> f64 {
        match self.mode {
            GammaMode::Implicit => self.gamma_implicit,
            GammaMode::Asymptotic => self.gamma_asymptotic,
        }
    }

    /// Recompute center and scale from the other γ variant.
    pub fn with_mode(mut self, mode: GammaMode) -> Result<Self> {
        self.mode = mode;
        let gamma = self.gamma();
        if gamma <= 0.0 {
            return Err(Error::domain(
                "scaling_constants",
                format!("{mode:?} γ_n = {gamma:.6} is not positive at n = {}; use the implicit mode", self.n),
            ));
        }
        self.center_complex = self.center_real + (gamma / 4.0).sqrt();
        self.scale_complex = (4.0 * gamma).sqrt();
        Ok(self)
    }

    /// Embedded modulus √n + √(γ/4) + r/√(4γ) of the fluctuation coordinate r.
    pub fn complex_modulus(&self, r: f64) -> f64 {
        self.center_complex + r / self.scale_complex
    }

    /// Inverse of [`Self::complex_modulus`]: √(4γ)(|z| − √n − √(γ/4)).
    pub fn complex_fluctuation(&self, modulus: f64) -> f64 {
        self.scale_complex * (modulus - self.center_complex)
    }
}

/// ln(γ²e^γ·2π/n), increasing in γ > 0.
fn implicit_residual_ln(gamma: f64, ln_target: f64) -> f64 {
    2.0 * gamma.ln() + gamma - ln_target
}

fn solve_implicit_gamma(n: f64) -> f64 {
    let ln_target = (n / (2.0 * std::f64::consts::PI)).ln();
    let mut lo = 1e-6;
    let mut hi = n.ln() + 2.0 * n.ln().ln() + 10.0;
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if implicit_residual_ln(mid, ln_target) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut gamma = 0.5 * (lo + hi);
    for _ in 0..2 {
        gamma -= implicit_residual_ln(gamma, ln_target) / (2.0 / gamma + 1.0);
    }
    gamma
}

/// Scaling constants for matrix size n ≥ 2, centered with the implicit γ.
pub fn scaling_constants(n: u64) -> Result<ScalingConstants> {
    if n < 2 {
        return Err(Error::domain("scaling_constants", format!("n = {n} must be at least 2")));
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let gamma_asymptotic = (nf / (2.0 * std::f64::consts::PI * ln_n * ln_n)).ln();
    let gamma_implicit = solve_implicit_gamma(nf);
    let center_real = nf.sqrt();
    Ok(ScalingConstants {
        n,
        gamma_asymptotic,
        gamma_implicit,
        center_complex: center_real + (gamma_implicit / 4.0).sqrt(),
        scale_complex: (4.0 * gamma_implicit).sqrt(),
        center_real,
        mode: GammaMode::Implicit,
    })
}
