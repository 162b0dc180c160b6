use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::Stepper;
use crate::spectral::{kaiser_bessel_window, EnergyDistribution, EnergyGrid};
use crate::spin::{HamiltonianSpec, SpinState};

/// Shortest series accepted by [`spectral_g`].
pub const MIN_SERIES_LEN: usize = 64;

/// Samples `⟨ψ(k·dt)|ψ(0)⟩` for `k = 0..n_samples`.
#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrSeries {
    pub samples: Vec<Complex64>,
    pub dt: f64,
}

impl AutocorrSeries {
    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }
}

/// Evolves a copy of `psi` with RK4 steps of `dt` and records its overlap
/// with the initial state after every step.
pub fn autocorrelation_series(
    spec: &HamiltonianSpec,
    psi: &SpinState,
    dt: f64,
    n_samples: usize,
) -> Result<AutocorrSeries> {
    psi.check_dim(spec.n_sites)?;
    psi.check_normalized(1e-6)?;
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    let mut samples = Vec::with_capacity(n_samples);
    let mut state = psi.clone();
    let mut stepper = Stepper::new(spec);
    for k in 0..n_samples {
        if k > 0 {
            stepper.step(state.amplitudes_mut(), Complex64::new(0.0, -dt));
        }
        samples.push(state.inner(psi));
    }
    Ok(AutocorrSeries { samples, dt })
}

/// [`spectral_g`] output with its diagnostics.
#[derive(Debug, Clone)]
pub struct SpectralEstimate {
    /// Clipped and renormalized density.
    pub distribution: EnergyDistribution,
    /// Densities before clipping and renormalization.
    pub raw_densities: Vec<f64>,
    /// `Σ g Δ_e` over the grid before clipping.
    pub raw_mass: f64,
    /// Mass removed by clipping negative leakage.
    pub clipped_mass: f64,
    /// Highest resolvable energy `π/dt`.
    pub nyquist: f64,
    /// Set when the grid reaches beyond `±π/dt`, where the estimate aliases.
    pub grid_exceeds_nyquist: bool,
}

/// Windowed Fourier estimate of `g(E)` from an autocorrelation series.
///
/// The one-sided series `c_0..c_{N-1}` is extended to the two-sided series
/// of length `M = 2N - 1` through `c_{-k} = conj(c_k)`, and tapered by the
/// Kaiser–Bessel window of length `M` centred at `t = 0`. The transform is
/// averaged exactly over each bin, which turns the `e^{-iE t}` kernel into
/// `e^{-iE_c t} sinc(Δ_e t / 2)`. Samples of an eigenstate carry the phase
/// `e^{+iE_k t}`, so its peak sits at `+E_k`.
pub fn spectral_g(series: &AutocorrSeries, alpha: f64, grid: EnergyGrid) -> Result<SpectralEstimate> {
    let n = series.n_samples();
    if n < MIN_SERIES_LEN {
        return Err(Error::InvalidParameter(format!(
            "series has {n} samples, need at least {MIN_SERIES_LEN}"
        )));
    }
    let dt = series.dt;
    let m = 2 * n - 1;
    let half = 0.5 * grid.bin_width;
    let weighted: Vec<(f64, Complex64)> = series
        .samples
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let t = k as f64 * dt;
            let sinc = if k == 0 { 1.0 } else { (half * t).sin() / (half * t) };
            (t, c * (kaiser_bessel_window(n - 1 + k, m, alpha) * sinc))
        })
        .collect();
    let c0 = weighted[0].1.re;
    let raw: Vec<f64> = grid
        .centers()
        .into_iter()
        .map(|e| {
            let tail: f64 = weighted[1..]
                .iter()
                .map(|(t, wc)| (wc * Complex64::from_polar(1.0, -e * t)).re)
                .sum();
            dt / (2.0 * PI) * (c0 + 2.0 * tail)
        })
        .collect();
    let raw_mass = raw.iter().sum::<f64>() * grid.bin_width;
    let clipped_mass = -raw.iter().filter(|x| **x < 0.0).sum::<f64>() * grid.bin_width;
    let clipped = raw.iter().map(|x| x.max(0.0)).collect();
    let mut distribution = EnergyDistribution::from_densities(grid, clipped)?;
    distribution.normalize()?;
    let nyquist = PI / dt;
    Ok(SpectralEstimate {
        distribution,
        raw_densities: raw,
        raw_mass,
        clipped_mass,
        nyquist,
        grid_exceeds_nyquist: grid.low_edge() < -nyquist || grid.high_edge() > nyquist,
    })
}
