//! Closed-form reference laws and bounds.

use serde::{Deserialize, Serialize};

use super::quadrature::composite_gauss_legendre;
use crate::error::{ensure_finite, Error, Result};
use crate::kernels::limit_kernel_t;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GumbelLaw {
    /// e^{−½e^{−t}}, the spectral radius of the real ensemble.
    RealGinibreRadius,
    /// e^{−e^{−t}}, the spectral radius of the complex ensemble.
    ComplexGinibreRadius,
}

impl GumbelLaw {
    fn weight(self) -> f64 {
        match self {
            GumbelLaw::RealGinibreRadius => 0.5,
            GumbelLaw::ComplexGinibreRadius => 1.0,
        }
    }

    pub fn density(self, t: f64) -> f64 {
        let c = self.weight();
        c * (-t).exp() * (-c * (-t).exp()).exp()
    }
}

pub fn gumbel_reference(t: f64, which: GumbelLaw) -> f64 {
    (-which.weight() * (-t).exp()).exp()
}

/// Intensity mass ((θ₂ − θ₁)/2π)e^{−t} of {r > t, θ₁ < θ < θ₂}.
pub fn poisson_region_integral(t: f64, theta1: f64, theta2: f64) -> Result<f64> {
    const OP: &str = "poisson_region_integral";
    ensure_finite(OP, "t", t)?;
    if !(0.0 <= theta1 && theta1 < theta2 && theta2 <= std::f64::consts::PI) {
        return Err(Error::domain(OP, format!("need 0 ≤ θ₁ < θ₂ ≤ π, got ({theta1}, {theta2})")));
    }
    Ok((theta2 - theta1) / (2.0 * std::f64::consts::PI) * (-t).exp())
}

/// sup_y ∫_t^∞ |T(x, y)| dx over y ∈ [t, t + span], on a sampled y-grid.
pub fn holmgren_bound(t: f64) -> Result<f64> {
    ensure_finite("holmgren_bound", "t", t)?;
    const SPAN: f64 = 14.0;
    let grid = composite_gauss_legendre(t, t + SPAN + 12.0, 13, 16)?;
    let mut sup = 0.0f64;
    for k in 0..=140 {
        let y = t + SPAN * k as f64 / 140.0;
        sup = sup.max(grid.integrate(|x| limit_kernel_t(x, y).abs()));
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gumbel_values() {
        assert!((gumbel_reference(0.0, GumbelLaw::RealGinibreRadius) - (-0.5f64).exp()).abs() < 1e-15);
        assert!((gumbel_reference(0.0, GumbelLaw::ComplexGinibreRadius) - (-1.0f64).exp()).abs() < 1e-15);
        for law in [GumbelLaw::RealGinibreRadius, GumbelLaw::ComplexGinibreRadius] {
            assert!(gumbel_reference(50.0, law) >= 1.0 - 1e-20);
            assert!(gumbel_reference(-10.0, law) < 1e-4);
        }
    }

    #[test]
    fn poisson_values() {
        assert!((poisson_region_integral(0.0, 0.0, std::f64::consts::FRAC_PI_2).unwrap() - 0.25).abs() < 1e-15);
        assert!((poisson_region_integral(1.3, 0.0, std::f64::consts::PI).unwrap() - 0.5 * (-1.3f64).exp()).abs() < 1e-15);
        assert!(poisson_region_integral(800.0, 0.0, 1.0).unwrap() == 0.0);
        assert!(poisson_region_integral(0.0, 1.0, 1.0).is_err());
        assert!(poisson_region_integral(0.0, -0.1, 1.0).is_err());
    }

    #[test]
    fn holmgren_below_one() {
        for t in [-6.0, -3.0, 0.0, 3.0] {
            let b = holmgren_bound(t).unwrap();
            assert!(b < 1.0, "t = {t}: {b}");
        }
    }
}
