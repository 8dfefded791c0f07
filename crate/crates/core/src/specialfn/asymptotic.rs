//! The μ function and leading-order asymptotics of e^{−nz}𝔢_n(nz) in the
//! uniform real, saddle and exterior regimes.

use num_complex::Complex64;

use super::erf::{erfc, erfc_complex, erfcx};
use super::gamma::{ln1pmx, odd_atanh_tail_over_u};
use crate::error::{ensure_finite, Error, Result};

/// (t − ln t − 1)/(t − 1)², stable as t → 1.
fn mu_sq_ratio(t: f64) -> f64 {
    let d = t - 1.0;
    if d.abs() < 0.5 {
        let u = d / (2.0 + d);
        0.5 * (1.0 - u) - 0.5 * (1.0 - u) * (1.0 - u) * odd_atanh_tail_over_u(u)
    } else {
        -ln1pmx(d) / (d * d)
    }
}

/// μ(t) = √(t − ln t − 1), taken nonnegative.
pub fn mu(t: f64) -> Result<f64> {
    ensure_finite("mu", "t", t)?;
    if t <= 0.0 {
        return Err(Error::domain("mu", format!("t = {t} must be positive")));
    }
    Ok((t - 1.0).abs() * mu_sq_ratio(t).sqrt())
}

/// 2(z − ln z − 1)/(z − 1)², by its power series in z − 1 for |z − 1| < ½.
fn mu_sq_ratio_complex(z: Complex64) -> Complex64 {
    let w = z - 1.0;
    if w.norm() < 0.5 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for k in 2..200u32 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = pow * (sign / k as f64);
            sum += term;
            if term.norm() < 1e-17 * sum.norm() {
                break;
            }
            pow *= w;
        }
        sum * 2.0
    } else {
        (z - z.ln() - 1.0) * 2.0 / (w * w)
    }
}

/// The branch of √(z − ln z − 1) analytic near z = 1 with μ(1 + x) > 0 for
/// small x > 0.
pub fn mu_complex(z: Complex64) -> Complex64 {
    let w = z - 1.0;
    w * std::f64::consts::FRAC_1_SQRT_2 * mu_sq_ratio_complex(z).sqrt()
}

/// Which leading-order expansion of the truncated exponential to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncExpRegime {
    /// Real argument nt, t ≥ 0: 𝟙_{t<1} + (1/√2)·μt/(t−1)·erfc(√n μ).
    UniformReal,
    /// Near z = 1: erfc(√n μ(z))/(2√2 μ′(z)).
    Saddle,
    /// Outside the unit disk: returns e^{−nz}𝔢_{n−1}(nz) ≈ e^{n(1−z)}z^n/(√(2πn)(z−1)).
    Exterior,
}

/// Constants shaping the saddle and exterior admissible regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeConstants {
    /// Saddle regime inner radius is `m/√n`.
    pub m: f64,
    /// Saddle regime outer radius.
    pub delta: f64,
    /// Exterior regime excludes |z − 1| ≤ n^{−alpha}.
    pub alpha: f64,
}

impl Default for RegimeConstants {
    fn default() -> Self {
        Self { m: 2.0, delta: 0.25, alpha: 0.3 }
    }
}

/// Leading-order approximation of e^{−nz}𝔢_n(nz) (or e^{−nz}𝔢_{n−1}(nz) in
/// the exterior regime) in the chosen regime.
pub fn asymptotic_trunc_exp(
    n: u64,
    z: Complex64,
    regime: TruncExpRegime,
    consts: RegimeConstants,
) -> Result<Complex64> {
    const OP: &str = "asymptotic_trunc_exp";
    ensure_finite(OP, "z.re", z.re)?;
    ensure_finite(OP, "z.im", z.im)?;
    if n == 0 {
        return Err(Error::domain(OP, "n must be positive"));
    }
    let nf = n as f64;
    let w = z - 1.0;
    match regime {
        TruncExpRegime::UniformReal => {
            if z.im != 0.0 || z.re < 0.0 {
                return Err(Error::domain(OP, format!("uniform-real regime needs real z ≥ 0, got {z}")));
            }
            let t = z.re;
            if t == 0.0 {
                return Ok(Complex64::new(1.0, 0.0));
            }
            let indicator = if t < 1.0 { 1.0 } else { 0.0 };
            let ratio = mu_sq_ratio(t).sqrt();
            let signed = if t >= 1.0 { ratio } else { -ratio };
            let tail = std::f64::consts::FRAC_1_SQRT_2 * t * signed * erfc(nf.sqrt() * (t - 1.0).abs() * ratio);
            Ok(Complex64::new(indicator + tail, 0.0))
        }
        TruncExpRegime::Saddle => {
            let dist = w.norm();
            let lo = consts.m / nf.sqrt();
            if dist < lo || dist > consts.delta {
                return Err(Error::domain(
                    OP,
                    format!("saddle regime needs {lo:.3e} ≤ |z − 1| ≤ {}, got {dist:.3e}", consts.delta),
                ));
            }
            if w.arg().abs() > 2.0 * std::f64::consts::FRAC_PI_3 {
                return Err(Error::domain(OP, "saddle regime needs |arg(z − 1)| ≤ 2π/3"));
            }
            // 1/(2√2 μ′) with μ′ = (z − 1)/(2zμ) equals z·√ratio/2.
            let ratio = mu_sq_ratio_complex(z);
            let mu = w * std::f64::consts::FRAC_1_SQRT_2 * ratio.sqrt();
            Ok(z * ratio.sqrt() * 0.5 * erfc_complex(mu * nf.sqrt()))
        }
        TruncExpRegime::Exterior => {
            if z.norm() <= 1.0 {
                return Err(Error::domain(OP, "exterior regime needs |z| > 1"));
            }
            let hole = nf.powf(-consts.alpha);
            if w.norm() <= hole {
                return Err(Error::domain(
                    OP,
                    format!("exterior regime needs |z − 1| > n^(−α) = {hole:.3e}"),
                ));
            }
            let expo = (Complex64::new(1.0, 0.0) - z + z.ln()) * nf;
            Ok(expo.exp() / ((2.0 * std::f64::consts::PI * nf).sqrt() * w))
        }
    }
}

/// ln of the uniform-real tail term (1/√2)·μt/|t−1|·erfc(√n μ) for t ≠ 1.
///
/// For t > 1 this approximates ln(e^{−nt}𝔢_n(nt)) = ln Q(n+1, nt); for
/// t < 1 it approximates ln(1 − e^{−nt}𝔢_n(nt)) = ln P(n+1, nt). Both underflow
/// in linear scale for moderate n.
pub fn ln_uniform_real_tail(n: u64, t: f64) -> Result<f64> {
    ensure_finite("ln_uniform_real_tail", "t", t)?;
    if t <= 0.0 || t == 1.0 {
        return Err(Error::domain("ln_uniform_real_tail", "needs t > 0, t ≠ 1"));
    }
    let ratio = mu_sq_ratio(t).sqrt();
    let x = (n as f64).sqrt() * (t - 1.0).abs() * ratio;
    Ok(-0.5 * std::f64::consts::LN_2 + (t * ratio).ln() + erfcx(x).ln() - x * x)
}
