//! Nyström discretization of the edge kernels: Fredholm determinants,
//! resolvents, the real-edge gap probabilities (limit law and finite even
//! n), the complex-edge trace, Pfaffians and closed-form references.

mod complex_trace;
mod curve;
mod edge;
mod finite_gap;
mod limit_law;
mod odd_check;
mod operator;
mod pfaffian;
mod quadrature;
mod references;

pub use complex_trace::{complex_gap_trace, ComplexTrace, TraceGrid, RADIAL_SPAN, TRACE_TOLERANCE};
pub use curve::{
    checked_finite_gap_real_even, checked_limit_law_real, checked_limit_law_real_with, complex_trace_curve, finite_gap_curve, limit_law_curve,
    GapCurve, GapMethod, GapRow, MONOTONE_SLACK, REFINEMENT_TOLERANCE,
};
pub use edge::{EdgeGap, GridParams};
pub use finite_gap::finite_gap_real_even;
pub use limit_law::{limit_law_real, limit_law_real_with, LimitFormula};
pub use odd_check::{finite_gap_real_odd_check, OddCheckReport};
pub use operator::{fredholm_det, resolvent_solve, DiscreteOperator, ResolventSolver, CONDITION_LIMIT};
pub use pfaffian::{pfaffian, pfaffian_det_identity_check, symplectic_form, SquareMatrix};
pub use quadrature::{composite_gauss_legendre, gauss_legendre_grid, QuadratureGrid};
pub use references::{gumbel_reference, holmgren_bound, poisson_region_integral, GumbelLaw};
