//! Allocation of users to capacitated servers on the half-line `[0, ∞)`.
//!
//! The crate is split into:
//!
//! * [`distributions`]: inter-point distance laws and the exceptional
//!   first-batch law used by the Poisson-user model.
//! * [`policies`]: MTR, UGS, Gale–Shapley and the optimal dynamic program over
//!   a concrete [`SpatialInstance`](policies::SpatialInstance).
//! * [`numerics`]: root finding, unit-disk roots, small linear solves, the
//!   Bessel function `I₁` and adaptive quadrature.
//! * [`analytic`]: closed-form expected request distance for the bulk M/M/1,
//!   renewal-user, renewal-server and random-capacity models.
//! * [`simulate`]: the Monte Carlo engine, structural verification and
//!   figure sweeps.

pub mod analytic;
pub mod distributions;
mod error;
pub mod numerics;
pub mod policies;
pub mod simulate;

pub use error::{Error, Result};
