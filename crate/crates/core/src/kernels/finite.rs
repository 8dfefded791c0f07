//! The finite-n real kernel T_n (symmetric part of the real Ginibre kernel).

use crate::error::{ensure_finite, Error, Result};
use crate::specialfn::{reg_gamma_q, trunc_exp_signed_scaled};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// T_n(x, y) = e^{−(x−y)²/2}·Q(n−1, xy)/√(2π) for xy ≥ 0.
pub fn finite_kernel_tn(n: u64, x: f64, y: f64) -> Result<f64> {
    const OP: &str = "finite_kernel_tn";
    ensure_finite(OP, "x", x)?;
    ensure_finite(OP, "y", y)?;
    if n < 2 {
        return Err(Error::domain(OP, format!("n = {n} must be at least 2")));
    }
    if x * y < 0.0 {
        return Err(Error::domain(OP, format!("xy = {} is negative", x * y)));
    }
    Ok(tn_nonneg(n, x, y))
}

fn tn_nonneg(n: u64, x: f64, y: f64) -> f64 {
    let d = x - y;
    FRAC_1_SQRT_2PI * (-0.5 * d * d).exp() * reg_gamma_q((n - 1) as f64, x * y)
}

/// T_n on the whole plane. For xy < 0 the polynomial form
/// e^{−(x²+y²)/2}𝔢_{n−2}(xy)/√(2π) is summed directly; its absolute error is
/// bounded by rounding times e^{−(|x|−|y|)²/2}.
pub(crate) fn finite_kernel_tn_any_sign(n: u64, x: f64, y: f64) -> f64 {
    let p = x * y;
    if p >= 0.0 {
        tn_nonneg(n, x, y)
    } else {
        FRAC_1_SQRT_2PI * trunc_exp_signed_scaled(n - 2, p, 0.5 * (x * x + y * y))
    }
}

/// Edge shift √n + x, rejected when nonpositive.
pub fn scaled_real_inputs(n: u64, x: f64) -> Result<f64> {
    ensure_finite("scaled_real_inputs", "x", x)?;
    let shifted = (n as f64).sqrt() + x;
    if shifted <= 0.0 {
        return Err(Error::domain(
            "scaled_real_inputs",
            format!("√n + x = {shifted} is not positive (n = {n}, x = {x})"),
        ));
    }
    Ok(shifted)
}
