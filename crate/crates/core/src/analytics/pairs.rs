use crate::error::{Error, Result};

/// Probability that `n` random single-site measurements hit no
/// nearest-neighbour pair: the exact product `Π_{k=1}^{n} (1 - (k-1) N_NN/N_s)`
/// and its approximation `e^{-n² N_NN/N_s}`.
pub fn pair_probability(n: usize, n_nn: usize, n_sites: usize) -> Result<(f64, f64)> {
    if n_sites == 0 {
        return Err(Error::InvalidParameter("n_sites must be positive".into()));
    }
    let ratio = n_nn as f64 / n_sites as f64;
    let mut exact = 1.0;
    for k in 1..=n {
        let factor = 1.0 - (k - 1) as f64 * ratio;
        if factor <= 0.0 {
            return Err(Error::DomainExceeded(format!(
                "{n} measurements with {n_nn} neighbours on {n_sites} sites"
            )));
        }
        exact *= factor;
    }
    Ok((exact, (-((n * n) as f64) * ratio).exp()))
}

/// Time form `e^{-N_NN N_s t²/τ_m²}`.
pub fn pair_probability_time(t: f64, n_nn: usize, n_sites: usize, tau_m: f64) -> Result<f64> {
    if !(tau_m > 0.0) {
        return Err(Error::InvalidParameter(format!("tau_m must be positive, got {tau_m}")));
    }
    Ok((-((n_nn * n_sites) as f64) * t * t / (tau_m * tau_m)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(pair_probability(0, 2, 24).unwrap(), (1.0, 1.0));
        assert_eq!(pair_probability(1, 2, 24).unwrap().0, 1.0);
        let (p, _) = pair_probability(3, 2, 24).unwrap();
        assert!((p - 22.0 / 24.0 * 20.0 / 24.0).abs() < 1e-15);
        assert!(pair_probability(13, 2, 24).is_err());
        assert_eq!(pair_probability_time(0.0, 2, 24, 48.0).unwrap(), 1.0);
    }
}
