//! Extremal eigenvalue statistics of the real and complex Ginibre ensembles.
//!
//! Two independent routes are provided: Fredholm determinants of the
//! correlation kernels discretized by Nyström quadrature ([`fredholm`]), and
//! direct Monte Carlo simulation of the matrices ([`ensemble`]). The
//! [`specialfn`] and [`kernels`] modules hold the pointwise building blocks,
//! and [`cli`] wires everything into the `ginibre` binary.

pub mod cli;
pub mod ensemble;
pub mod error;
pub mod fredholm;
pub mod kernels;
pub mod specialfn;

pub use error::{Error, Result};
