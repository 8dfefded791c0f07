//! Complementary error function (real and complex), its scaled form, and the
//! standard Gaussian density and distribution.

use num_complex::Complex64;

use super::gamma::upper_continued_fraction;
use crate::error::{ensure_finite, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// erf(x) by its Maclaurin series; used only for x² < 1.5.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -x2 / k;
        let add = term / (2.0 * k + 1.0);
        sum += add;
        if add.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    2.0 * FRAC_1_SQRT_PI * sum
}

/// (erfc(x), erfcx(x)) for x ≥ 0. erfc(x) = Q(½, x²), and on the continued
/// fraction branch erfcx = x·h/√π without forming e^{x²}.
fn erfc_pair_nonneg(x: f64) -> (f64, f64) {
    let x2 = x * x;
    if x2 < 1.5 {
        let c = 1.0 - erf_series(x);
        (c, x2.exp() * c)
    } else {
        let h = upper_continued_fraction(0.5, x2).expect("erfc continued fraction converges");
        let scaled = x * h * FRAC_1_SQRT_PI;
        (scaled * (-x2).exp(), scaled)
    }
}

fn erfc_pair_unchecked(x: f64) -> (f64, f64) {
    if x >= 0.0 {
        erfc_pair_nonneg(x)
    } else {
        let (c, s) = erfc_pair_nonneg(-x);
        (2.0 - c, 2.0 * (x * x).exp() - s)
    }
}

/// (erfc(x), e^{x²}·erfc(x)). The scaled value overflows to infinity below
/// x ≈ −26.6.
pub fn erfc_pair(x: f64) -> Result<(f64, f64)> {
    ensure_finite("erfc_pair", "x", x)?;
    Ok(erfc_pair_unchecked(x))
}

/// erfc(x) for finite x.
pub fn erfc(x: f64) -> f64 {
    erfc_pair_unchecked(x).0
}

/// e^{x²}·erfc(x) for finite x.
pub fn erfcx(x: f64) -> f64 {
    erfc_pair_unchecked(x).1
}

/// Standard normal density.
pub fn gaussian_pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Standard normal distribution function.
pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// (density, distribution function) of the standard normal law.
pub fn gaussian(x: f64) -> Result<(f64, f64)> {
    ensure_finite("gaussian", "x", x)?;
    Ok((gaussian_pdf(x), gaussian_cdf(x)))
}

/// Gauss–Legendre rule on [−1, 1] with 16 nodes (positive half).
const GL16_NODES: [f64; 8] = [
    0.09501250983763745,
    0.2816035507792589,
    0.45801677765722737,
    0.6178762444026438,
    0.755404408355003,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_WEIGHTS: [f64; 8] = [
    0.18945061045506859,
    0.1826034150449236,
    0.16915651939500262,
    0.14959598881657676,
    0.12462897125553403,
    0.09515851168249259,
    0.062253523938647706,
    0.027152459411754037,
];

/// erfc of a complex argument with Re ζ ≥ 0.
fn erfc_complex_right(z: Complex64) -> Complex64 {
    if z.norm() >= 6.0 {
        // Laplace continued fraction erfc(ζ) = e^{−ζ²}/√π · 1/(ζ + ½/(ζ + 1/(ζ + …))).
        let mut tail = z;
        for k in (1..=80).rev() {
            tail = z + (k as f64 * 0.5) / tail;
        }
        return (-z * z).exp() * FRAC_1_SQRT_PI / tail;
    }
    // erfc(ζ) = (2/√π) ∫_0^∞ e^{−(ζ+u)²} du along a horizontal ray, integrated
    // by composite Gauss–Legendre on [0, 12].
    const PANELS: usize = 48;
    const WIDTH: f64 = 12.0 / PANELS as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..PANELS {
        let mid = (p as f64 + 0.5) * WIDTH;
        let half = 0.5 * WIDTH;
        for (node, weight) in GL16_NODES.iter().zip(GL16_WEIGHTS.iter()) {
            for u in [mid - half * node, mid + half * node] {
                let s = z + u;
                acc += (-s * s).exp() * (weight * half);
            }
        }
    }
    acc * (2.0 * FRAC_1_SQRT_PI)
}

/// erfc(ζ) for complex ζ.
pub fn erfc_complex(z: Complex64) -> Complex64 {
    if z.re >= 0.0 {
        erfc_complex_right(z)
    } else {
        Complex64::new(2.0, 0.0) - erfc_complex_right(-z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erfc_basic_values() {
        let (c, s) = erfc_pair(0.0).unwrap();
        assert_eq!(c, 1.0);
        assert_eq!(s, 1.0);
        let (c, _) = erfc_pair(-1.0).unwrap();
        assert!((c - 1.842_700_792_949_714_9).abs() < 1e-15);
        let (_, s) = erfc_pair(50.0).unwrap();
        assert!((s * std::f64::consts::PI.sqrt() * 50.0 - 1.0).abs() < 1e-3);
        assert!(erfc_pair(f64::NAN).is_err());
    }

    #[test]
    fn erfc_branch_continuity() {
        let x = 1.5f64.sqrt();
        let below = erfc(x * (1.0 - 1e-15));
        let above = erfc(x * (1.0 + 1e-15));
        assert!((below - above).abs() < 1e-15);
    }

    #[test]
    fn gaussian_values() {
        let (g, cdf) = gaussian(0.0).unwrap();
        assert!((g - FRAC_1_SQRT_2PI).abs() < 1e-16);
        assert_eq!(cdf, 0.5);
        assert!(gaussian_cdf(8.0) > 1.0 - 1e-14);
        assert!((gaussian_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15);
    }

    #[test]
    fn complex_erfc_agrees_with_real_axis() {
        for &x in &[0.0, 0.3, 1.0, 2.5, 5.9, 6.1, 9.0, -1.2] {
            let z = erfc_complex(Complex64::new(x, 0.0));
            assert!((z.re - erfc(x)).abs() <= 1e-13 * erfc(x).max(1e-300), "x = {x}");
            assert!(z.im.abs() < 1e-14);
        }
    }

    #[test]
    fn complex_erfc_conjugate_symmetry_and_imaginary_axis() {
        let z = Complex64::new(0.7, 1.3);
        let a = erfc_complex(z);
        let b = erfc_complex(z.conj());
        assert!((a - b.conj()).norm() < 1e-13 * a.norm());
        // erfc(iy) = 1 − i·erfi(y); erfi(1) = 1.650425758797542876…
        let v = erfc_complex(Complex64::new(0.0, 1.0));
        assert!((v.re - 1.0).abs() < 1e-13);
        assert!((v.im + 1.650_425_758_797_542_9).abs() < 1e-12);
    }
}
