//! Truncated exponential sums 𝔢_m(z) = Σ_{k≤m} z^k/k!, always returned
//! multiplied by a decaying exponential so nothing overflows.

use num_complex::Complex64;

use super::gamma::{ln_gamma, reg_gamma};
use crate::error::{ensure_finite, Error, Result};

/// Largest order accepted by [`trunc_exp_complex`].
pub const COMPLEX_DIRECT_SUM_LIMIT: u64 = 5000;

/// e^{−x}·𝔢_m(x) for x ≥ 0, via the identity e^{−x}𝔢_m(x) = Q(m+1, x).
pub fn trunc_exp_scaled(m: u64, x: f64) -> Result<f64> {
    ensure_finite("trunc_exp_scaled", "x", x)?;
    if x < 0.0 {
        return Err(Error::domain(
            "trunc_exp_scaled",
            format!("x = {x} is negative; use trunc_exp_complex for negative or complex arguments"),
        ));
    }
    Ok(reg_gamma(m as f64 + 1.0, x)?.1)
}

/// Compensated complex accumulator.
#[derive(Default)]
struct KahanC {
    sum: Complex64,
    comp: Complex64,
}

impl KahanC {
    fn add(&mut self, v: Complex64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// e^{−z}·𝔢_m(z) by direct summation, starting from the largest term and
/// running the term recurrence both ways.
pub fn trunc_exp_complex(m: u64, z: Complex64) -> Result<Complex64> {
    ensure_finite("trunc_exp_complex", "z.re", z.re)?;
    ensure_finite("trunc_exp_complex", "z.im", z.im)?;
    if m > COMPLEX_DIRECT_SUM_LIMIT {
        return Err(Error::domain(
            "trunc_exp_complex",
            format!(
                "order m = {m} exceeds the direct-sum limit {COMPLEX_DIRECT_SUM_LIMIT}; use asymptotic_trunc_exp"
            ),
        ));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let peak = (z.norm().floor() as u64).min(m);
    let ln_peak = z.ln() * peak as f64 - ln_gamma(peak as f64 + 1.0) - z;
    let start = ln_peak.exp();
    let mut acc = KahanC::default();
    acc.add(start);
    let mut term = start;
    for k in (1..=peak).rev() {
        term = term * (k as f64) / z;
        acc.add(term);
    }
    let mut term = start;
    for k in peak + 1..=m {
        term = term * z / (k as f64);
        acc.add(term);
        if term.norm() < 1e-18 * acc.sum.norm() {
            break;
        }
    }
    Ok(acc.sum)
}

/// e^{−w}·𝔢_m(p) for real p of either sign and w ≥ 0.
///
/// For p < 0 the sum alternates; the absolute error is bounded by a few ulps
/// of e^{|p|−w}, which is what the Gaussian-weighted kernel needs.
pub(crate) fn trunc_exp_signed_scaled(m: u64, p: f64, w: f64) -> f64 {
    if p >= 0.0 {
        // e^{−w}𝔢_m(p) = e^{p−w}·Q(m+1, p).
        let q = reg_gamma(m as f64 + 1.0, p).expect("valid incomplete gamma arguments").1;
        return q * (p - w).exp();
    }
    let a = -p;
    let peak = (a.floor() as u64).min(m);
    let ln_start = peak as f64 * a.ln() - ln_gamma(peak as f64 + 1.0) - w;
    let start = ln_start.exp();
    let sign = |k: u64| if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut add = |v: f64| {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    add(sign(peak) * start);
    let mut term = start;
    for k in (1..=peak).rev() {
        term *= k as f64 / a;
        add(sign(k - 1) * term);
    }
    let mut term = start;
    for k in peak + 1..=m {
        term *= a / k as f64;
        add(sign(k) * term);
        if term < 1e-18 * start {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert_eq!(trunc_exp_scaled(5, 0.0).unwrap(), 1.0);
        assert!((trunc_exp_scaled(0, 2.0).unwrap() - (-2.0f64).exp()).abs() < 1e-16);
        assert!(trunc_exp_scaled(3, -1.0).is_err());
        let one = trunc_exp_complex(3, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(one, Complex64::new(1.0, 0.0));
        assert!(trunc_exp_complex(5001, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn complex_matches_real_route() {
        let z = trunc_exp_complex(50, Complex64::new(50.0, 0.0)).unwrap();
        let q = reg_gamma(51.0, 50.0).unwrap().1;
        assert!((z.re - q).abs() < 1e-10);
        assert!(z.im.abs() < 1e-14);
    }

    #[test]
    fn signed_sum_small_cases() {
        // e^{-w} (1 + p + p²/2) for m = 2.
        let (p, w) = (-1.7f64, 0.9f64);
        let direct = (-w).exp() * (1.0 + p + p * p / 2.0);
        assert!((trunc_exp_signed_scaled(2, p, w) - direct).abs() < 1e-15);
        let direct = (-w).exp() * (1.0 + 2.5 + 2.5f64.powi(2) / 2.0 + 2.5f64.powi(3) / 6.0);
        assert!((trunc_exp_signed_scaled(3, 2.5, w) - direct).abs() < 1e-14);
    }
}
