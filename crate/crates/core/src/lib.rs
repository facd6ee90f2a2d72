//! Weierstrass zeta, Hecke's Z, Weierstrass p and p', and the Kronecker
//! function, evaluated with rapidly convergent Gaussian lattice series and
//! checked against classical theta and q-series oracles.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod lattice;
pub mod oracles;
pub mod quasiperiods;
pub mod series;
pub mod triple;
pub mod verify;

mod sum;

pub use error::{Error, Result};
pub use lattice::{trunc_radius, Lattice, RealCoords, TruncationPlan};
pub use num_complex::Complex64;
pub use quasiperiods::{quasi_periods, zeta, QuasiPeriods};
pub use series::{kronecker_f, remark1_residual, wp, wp_prime, zee, EvalResult};
pub use triple::TripleCase;
