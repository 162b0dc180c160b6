use super::spectrum::Spectrum;
use crate::error::{Error, Result};

/// Canonical energy standard deviation `sqrt(⟨E²⟩ - ⟨E⟩²)` at temperature
/// `T`, which equals `T sqrt(C_V)` with `C_V = dE/dT`.
pub fn canonical_width(spectrum: &Spectrum, temperature: f64) -> Result<f64> {
    if temperature == 0.0 {
        return Err(Error::ZeroTemperature);
    }
    if spectrum.span() <= 0.0 {
        return Err(Error::InvalidParameter(
            "canonical width needs at least two distinct levels".into(),
        ));
    }
    let w = spectrum.canonical_weights(temperature)?;
    let mean: f64 = w.iter().zip(&spectrum.eigenvalues).map(|(p, e)| p * e).sum();
    let var: f64 = w
        .iter()
        .zip(&spectrum.eigenvalues)
        .map(|(p, e)| p * (e - mean).powi(2))
        .sum();
    Ok(var.max(0.0).sqrt())
}
