//! Extremal statistics of one spectrum.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specialfn::ScalingConstants;

/// Edge coordinates r′ = √(4γ)(|z| − √n − √(γ/4)), θ′ = arg z of an
/// eigenvalue in the open upper half plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledPoint {
    pub r: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub spectral_radius: f64,
    pub largest_real: Option<f64>,
    pub largest_complex_modulus: Option<f64>,
    pub real_count: usize,
    pub largest_is_real: bool,
    pub scaled_upper_half_points: Vec<ScaledPoint>,
}

/// Summarize a spectrum. An eigenvalue counts as real iff its imaginary part
/// is exactly zero, which the real Schur route guarantees structurally.
pub fn spectrum_summary(eigs: &[Complex64], sc: &ScalingConstants) -> SpectrumSummary {
    let mut largest_real: Option<f64> = None;
    let mut real_radius = 0.0f64;
    let mut largest_complex_modulus: Option<f64> = None;
    let mut real_count = 0;
    let mut points = Vec::new();
    for z in eigs {
        if z.im == 0.0 {
            real_count += 1;
            largest_real = Some(largest_real.map_or(z.re, |m| m.max(z.re)));
            real_radius = real_radius.max(z.re.abs());
        } else {
            let modulus = z.norm();
            largest_complex_modulus = Some(largest_complex_modulus.map_or(modulus, |m| m.max(modulus)));
            if z.im > 0.0 {
                points.push(ScaledPoint { r: sc.complex_fluctuation(modulus), theta: z.arg() });
            }
        }
    }
    let complex_radius = largest_complex_modulus.unwrap_or(0.0);
    let largest_is_real = real_count > 0 && real_radius >= complex_radius;
    SpectrumSummary {
        spectral_radius: real_radius.max(complex_radius),
        largest_real,
        largest_complex_modulus,
        real_count,
        largest_is_real,
        scaled_upper_half_points: points,
    }
}
