//! Special functions: incomplete gamma, erfc/erfcx, Gaussian density and
//! distribution, truncated exponential sums, their asymptotic regimes, and
//! the edge scaling constants.

mod asymptotic;
mod erf;
mod gamma;
mod scaling;
mod trunc_exp;

pub use asymptotic::{
    asymptotic_trunc_exp, ln_uniform_real_tail, mu, mu_complex, RegimeConstants, TruncExpRegime,
};
pub use erf::{erfc, erfc_complex, erfc_pair, erfcx, gaussian, gaussian_cdf, gaussian_pdf};
pub use gamma::{ln1pmx, ln_gamma, ln_gamma_star, ln_reg_gamma, reg_gamma, reg_gamma_p, reg_gamma_q};
pub use scaling::{scaling_constants, GammaMode, ScalingConstants};
pub use trunc_exp::{trunc_exp_complex, trunc_exp_scaled, COMPLEX_DIRECT_SUM_LIMIT};

pub(crate) use trunc_exp::trunc_exp_signed_scaled;
