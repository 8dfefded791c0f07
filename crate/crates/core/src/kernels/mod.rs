//! Pointwise kernels and rank-one functions: the limiting edge kernel T, the
//! finite-n real kernel T_n with its rank-one part, the complex-plane kernel
//! S_n and its bulk model S_κ, and odd-n consistency checks.

mod complex;
mod finite;
mod limit;
mod odd;
mod rank_one;

pub use complex::{complex_diag_sn, complex_offdiag_sn, s_kappa, ComplexPoint, COMPLEX_KERNEL_MAX_N};
pub use finite::{finite_kernel_tn, scaled_real_inputs};
pub use limit::{limit_kernel_t, limit_rank_one_density, limit_rank_one_distribution, LIMIT_RANK_ONE_MASS};
pub use odd::{odd_correction_norms, odd_n_identities, OddCorrectionNorms, OddIdentityReport};
pub use rank_one::{rank_one_functions, RankOneFunctions};

pub(crate) use complex::complex_diag_radial_factor;
pub(crate) use finite::finite_kernel_tn_any_sign;
