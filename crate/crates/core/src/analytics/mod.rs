//! The cutting-function model of measurement-driven changes of `g(E)` and
//! its closed-form and sampled evaluations.

mod cut;
mod heating;
mod narrowing;
mod pair_cut;
mod pairs;
mod two_peak;

pub use cut::{apply_cut, cutting_function_field, CutSource, CuttingFunction};
pub use heating::heating_drift;
pub use narrowing::{
    gaussian_width_update, narrowing_estimates, simulate_field_narrowing, NarrowingEstimates, NarrowingTrace,
};
pub use pair_cut::{pair_cutting_function, LocalAxis, PairCut};
pub use pairs::{pair_probability, pair_probability_time};
pub use two_peak::{
    approx_delta_g, binomial_avg_delta_g, fit_lambda, gauss_legendre, kappa_from_lambda, mc_avg_delta_g_two_peak,
    quadrature_avg_delta_g_two_peak, z_outcome_probability, AxisSet, CutModelParams, McOptions, Sampling,
};
