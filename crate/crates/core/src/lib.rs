//! Stability of statistical energy distributions of spin-1/2 chains under
//! random local projective measurements.
//!
//! The crate is organised bottom-up:
//!
//! * [`spin`]: Hamiltonians, states, exact spectra, canonical reference values.
//! * [`evolution`]: RK4 real-time propagation and imaginary-time preparation.
//! * [`measurement`]: projectors, Born sampling and measurement schedules.
//! * [`spectral`]: energy distributions, their estimators and `ΔG`.
//! * [`analytics`]: the cutting-function model and its closed forms.
//! * [`harness`]: configured, seeded batch experiments and their outputs.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod error;
pub mod evolution;
pub mod harness;
pub mod measurement;
pub mod spectral;
pub mod spin;
pub mod stats;

pub use error::{Error, Result};
