//! Binned energy distributions `g(E)`: the exact eigenbasis estimator, the
//! windowed autocorrelation estimator, and the stability measure `ΔG`.

mod autocorr;
mod distribution;
mod exact;
mod window;

pub use autocorr::{autocorrelation_series, spectral_g, AutocorrSeries, SpectralEstimate, MIN_SERIES_LEN};
pub use distribution::{
    delta_g, distribution_moments, EnergyDistribution, EnergyGrid, DEFAULT_BIN_COUNT, GRID_MARGIN_BINS,
};
pub use exact::{bin_levels, canonical_g, exact_binned_g, level_probabilities};
pub use window::{bessel_i0, kaiser_bessel_window};
