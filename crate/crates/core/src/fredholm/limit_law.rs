//! Limit law of the largest real eigenvalue, centered at √n.

use serde::{Deserialize, Serialize};

use super::edge::{assemble, EdgeGap, EdgeInputs, GridParams};
use crate::error::Result;
use crate::kernels::{limit_kernel_t, limit_rank_one_density, limit_rank_one_distribution, LIMIT_RANK_ONE_MASS};
use crate::specialfn::{gaussian_cdf, gaussian_pdf};

/// Which normalization of the rank-two correction to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitFormula {
    /// The n → ∞ limit of the finite-n factorization: density e^{−x²}/√(2π),
    /// its distribution function with total mass 1/√2, and the compensating
    /// mass −1/√2 at −∞ left by the even-n rank-one density.
    #[default]
    EdgeLimit,
    /// Γ_t = (1 − a_t)(1 − ½ρ₁) + ½(1 − b_t)ρ₂ with the standard normal g, G.
    /// Kept for comparison; it does not match the large-n finite values.
    StandardNormal,
}

/// F(t) = lim P(max real eigenvalue − √n ≤ t).
pub fn limit_law_real(t: f64, grid: GridParams) -> Result<EdgeGap> {
    limit_law_real_with(t, grid, LimitFormula::EdgeLimit)
}

pub fn limit_law_real_with(t: f64, grid: GridParams, formula: LimitFormula) -> Result<EdgeGap> {
    const OP: &str = "limit_law_real";
    grid.validate(OP)?;
    let c = t - grid.lower;
    match formula {
        LimitFormula::EdgeLimit => {
            let inputs = EdgeInputs {
                kernel: limit_kernel_t,
                density: limit_rank_one_density,
                distribution: limit_rank_one_distribution,
                distribution_at_infinity: LIMIT_RANK_ONE_MASS,
                density_mass_below: limit_rank_one_distribution(c) - LIMIT_RANK_ONE_MASS,
            };
            assemble(OP, t, grid, &inputs)
        }
        LimitFormula::StandardNormal => {
            let inputs = EdgeInputs {
                kernel: limit_kernel_t,
                density: gaussian_pdf,
                distribution: gaussian_cdf,
                distribution_at_infinity: 1.0,
                density_mass_below: gaussian_cdf(c),
            };
            assemble(OP, t, grid, &inputs)
        }
    }
}
