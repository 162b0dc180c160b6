use crate::error::Result;
use crate::spectral::{distribution_moments, EnergyDistribution};

/// `(E_av,n - E_av,0)/(e_max - e_min)`.
pub fn heating_drift(g0: &EnergyDistribution, gn: &EnergyDistribution, e_min: f64, e_max: f64) -> Result<f64> {
    if !(e_max > e_min) {
        return Err(crate::Error::InvalidInterval { low: e_min, high: e_max });
    }
    Ok((distribution_moments(gn).0 - distribution_moments(g0).0) / (e_max - e_min))
}
