#![allow(dead_code)]

//! Shared test oracles. `Dd` is a double-double number (about 32 digits)
//! used as an extended-precision reference for truncated exponential sums.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    const LN2: Dd = Dd { hi: 0.693_147_180_559_945_3, lo: 2.319_046_813_846_299_6e-17 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn scale(self, s: f64) -> Self {
        Dd { hi: self.hi * s, lo: self.lo * s }
    }

    /// e^a with range reduction a = k ln 2 + 1024·r.
    pub fn exp(self) -> Self {
        let k = (self.hi / Self::LN2.hi).round();
        let r = (self - Self::LN2 * Dd::new(k)).scale(1.0 / 1024.0);
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for i in 1..=24 {
            term = term * r / Dd::new(i as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum * sum;
        }
        // 2^k applied in two halves to stay clear of intermediate overflow.
        let k = k as i32;
        let half = k / 2;
        sum.scale(2f64.powi(half)).scale(2f64.powi(k - half))
    }

    /// ln a for a > 0: one Newton step on the f64 logarithm.
    pub fn ln(self) -> Self {
        let y = Dd::new(self.hi.ln());
        y + self * (-y).exp() - Dd::ONE
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::new(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::new(q2);
        let q3 = r.hi / b.hi;
        Dd::renorm(q1, q2) + Dd::new(q3)
    }
}

/// ln(e^{−x}·Σ_{k≤m} x^k/k!) in double-double, x > 0.
///
/// Terms are summed relative to the largest one, whose logarithm
/// p ln x − x − ln p! is formed separately.
pub fn ln_trunc_exp_scaled_dd(m: u64, x: f64) -> Dd {
    assert!(x > 0.0);
    let peak = (x.floor() as u64).min(m);
    let xd = Dd::new(x);
    let ln_x = xd.ln();
    let mut ln_fact = Dd::ZERO;
    for k in 2..=peak {
        ln_fact = ln_fact + Dd::new(k as f64).ln();
    }
    let ln_peak = ln_x * Dd::new(peak as f64) - xd - ln_fact;
    let mut sum = Dd::ONE;
    let mut ratio = Dd::ONE;
    for k in (1..=peak).rev() {
        ratio = ratio * Dd::new(k as f64) / xd;
        sum = sum + ratio;
        if ratio.hi < 1e-40 {
            break;
        }
    }
    ratio = Dd::ONE;
    for k in peak + 1..=m {
        ratio = ratio * xd / Dd::new(k as f64);
        sum = sum + ratio;
        if ratio.hi < 1e-40 {
            break;
        }
    }
    ln_peak + sum.ln()
}

/// Relative error of `value` against e^{ln_ref}.
pub fn relative_error_log(value: f64, ln_ref: Dd) -> f64 {
    (Dd::new(value.ln()) - ln_ref).to_f64().exp_m1().abs()
}
