use rand::Rng;

use crate::analytics::{apply_cut, cutting_function_field};
use crate::error::{Error, Result};
use crate::spectral::{distribution_moments, EnergyDistribution};

/// `(1/w² + (slope/value)²)^{-1/2}`: width of a Gaussian after one cut with
/// the given value and slope at its centre.
pub fn gaussian_width_update(w_prev: f64, cut_value: f64, cut_slope: f64) -> Result<f64> {
    if !(w_prev > 0.0) || !(cut_value > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need positive width and cut value, got {w_prev} and {cut_value}"
        )));
    }
    let r = cut_slope / cut_value;
    Ok((1.0 / (w_prev * w_prev) + r * r).powf(-0.5))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NarrowingEstimates {
    /// `1/(w₀² u²)`: measurements needed for `ΔG ∼ 1`.
    pub n_critical: f64,
    /// `τ_m ε₁² N_s / w₀²`.
    pub tau_c: f64,
}

/// Order-of-magnitude narrowing scales from the single-spin level spacing
/// `epsilon1`, initial width `w0` and mean cut slope `u`.
pub fn narrowing_estimates(tau_m: f64, epsilon1: f64, n_sites: usize, w0: f64, u: f64) -> Result<NarrowingEstimates> {
    if !(tau_m > 0.0 && epsilon1 > 0.0 && n_sites > 0 && w0 > 0.0 && u > 0.0) {
        return Err(Error::InvalidParameter("narrowing estimates need positive inputs".into()));
    }
    Ok(NarrowingEstimates {
        n_critical: 1.0 / (w0 * w0 * u * u),
        tau_c: tau_m * epsilon1 * epsilon1 * n_sites as f64 / (w0 * w0),
    })
}

/// One sequence of random field cuts applied to a distribution.
#[derive(Debug, Clone)]
pub struct NarrowingTrace {
    /// `1/w_n²` for `n = 0..=n_cuts`.
    pub inverse_width_sq: Vec<f64>,
    /// `(slope/value)²` of cut `n` at the mean energy before it.
    pub slope_ratio_sq: Vec<f64>,
}

/// Applies `n_cuts` field cuts along uniformly random axes. Each outcome is
/// drawn with its probability `B`, so the complementary cut is used with
/// probability `1 - B`.
pub fn simulate_field_narrowing<R: Rng + ?Sized>(
    g0: &EnergyDistribution,
    n_cuts: usize,
    e_min: f64,
    e_max: f64,
    rng: &mut R,
) -> Result<NarrowingTrace> {
    let mut g = g0.clone();
    let (_, w) = distribution_moments(&g);
    let mut inverse_width_sq = vec![1.0 / (w * w)];
    let mut slope_ratio_sq = Vec::with_capacity(n_cuts);
    for _ in 0..n_cuts {
        let cos_theta: f64 = rng.random_range(-1.0..=1.0);
        let mut cut = cutting_function_field(cos_theta.acos(), e_min, e_max)?;
        let (mean, _) = distribution_moments(&g);
        let (kept, b) = apply_cut(&g, &cut)?;
        g = if rng.random::<f64>() < b {
            kept
        } else {
            cut = cut.complement();
            apply_cut(&g, &cut)?.0
        };
        let ratio = cut.slope().unwrap() / cut.evaluate(mean);
        slope_ratio_sq.push(ratio * ratio);
        let (_, w) = distribution_moments(&g);
        inverse_width_sq.push(1.0 / (w * w));
    }
    Ok(NarrowingTrace {
        inverse_width_sq,
        slope_ratio_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_update_closed_forms() {
        assert_eq!(gaussian_width_update(0.7, 0.5, 0.0).unwrap(), 0.7);
        let mut w = 1.0;
        for _ in 0..3 {
            w = gaussian_width_update(w, 2.0, 2.0).unwrap();
        }
        assert!((w - 0.5).abs() < 1e-15);
        assert!(gaussian_width_update(1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn narrowing_time_scales() {
        let e = narrowing_estimates(48.0, 0.5, 24, 4.8, 0.1).unwrap();
        assert!((e.tau_c - 12.5).abs() < 1e-12);
        let abs = narrowing_estimates(3.0, 0.5, 16, 0.5 * 4.0, 0.1).unwrap();
        assert!((abs.tau_c - 3.0).abs() < 1e-12);
        let doubled = narrowing_estimates(48.0, 0.5, 24, 9.6, 0.1).unwrap();
        assert!((doubled.tau_c - 12.5 / 4.0).abs() < 1e-12);
        assert!(narrowing_estimates(0.0, 0.5, 24, 4.8, 0.1).is_err());
    }
}
