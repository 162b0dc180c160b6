use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::spectral::{EnergyDistribution, EnergyGrid};
use crate::spin::{SpinState, Spectrum};

/// `|⟨E_k|ψ⟩|²` for every eigenstate, in spectrum order.
pub fn level_probabilities(psi: &SpinState, spectrum: &Spectrum) -> Result<Vec<f64>> {
    let v = spectrum.vectors()?;
    if psi.dim() != v.nrows() {
        return Err(Error::DimensionMismatch {
            expected: v.nrows(),
            found: psi.dim(),
        });
    }
    let re = DVector::from_iterator(psi.dim(), psi.amplitudes().iter().map(|a| a.re));
    let im = DVector::from_iterator(psi.dim(), psi.amplitudes().iter().map(|a| a.im));
    let cr = v.tr_mul(&re);
    let ci = v.tr_mul(&im);
    Ok(cr.iter().zip(ci.iter()).map(|(r, i)| r * r + i * i).collect())
}

/// Bins per-eigenstate weights into a distribution.
pub fn bin_levels(spectrum: &Spectrum, weights: &[f64], grid: EnergyGrid) -> Result<EnergyDistribution> {
    if weights.len() != spectrum.dim() {
        return Err(Error::DimensionMismatch {
            expected: spectrum.dim(),
            found: weights.len(),
        });
    }
    Ok(EnergyDistribution::from_point_masses(
        grid,
        spectrum.eigenvalues.iter().copied().zip(weights.iter().copied()),
    ))
}

/// `g(E)` with `Σ_{k∈bin} |⟨E_k|ψ⟩|² / Δ_e` per bin. Not renormalized, so
/// the total mass equals `‖ψ‖²`.
pub fn exact_binned_g(psi: &SpinState, spectrum: &Spectrum, grid: EnergyGrid) -> Result<EnergyDistribution> {
    let p = level_probabilities(psi, spectrum)?;
    bin_levels(spectrum, &p, grid)
}

/// Canonical `g(E) ∝ e^{-E/T} ν(E)` binned from the exact levels.
pub fn canonical_g(spectrum: &Spectrum, temperature: f64, grid: EnergyGrid) -> Result<EnergyDistribution> {
    let w = spectrum.canonical_weights(temperature)?;
    bin_levels(spectrum, &w, grid)
}
