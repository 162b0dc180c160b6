use crate::error::{Error, Result};
use crate::spectral::{EnergyDistribution, EnergyGrid};

/// Where a tabulated cutting function came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSource {
    FieldAnalytic,
    PairExact,
}

/// Bin-averaged diagonal of a measurement operator in the energy basis,
/// `E ↦ [P]_diag(E)`.
#[derive(Debug, Clone, PartialEq)]
pub enum CuttingFunction {
    /// `½ - cos θ · E/(e_max - e_min)` of a spin measured in a uniform field.
    FieldAnalytic { cos_theta: f64, e_min: f64, e_max: f64 },
    /// One value per bin of `grid`.
    Tabulated {
        grid: EnergyGrid,
        values: Vec<f64>,
        source: CutSource,
    },
}

impl CuttingFunction {
    pub fn source(&self) -> CutSource {
        match self {
            Self::FieldAnalytic { .. } => CutSource::FieldAnalytic,
            Self::Tabulated { source, .. } => *source,
        }
    }

    /// Value at `energy`; tabulated functions use the bin containing it
    /// (edge bins beyond the grid).
    pub fn evaluate(&self, energy: f64) -> f64 {
        match self {
            Self::FieldAnalytic { cos_theta, e_min, e_max } => 0.5 - cos_theta * energy / (e_max - e_min),
            Self::Tabulated { grid, values, .. } => values[grid.clamped_bin(energy)],
        }
    }

    /// `d/dE` of the analytic form; `None` for tabulated functions.
    pub fn slope(&self) -> Option<f64> {
        match self {
            Self::FieldAnalytic { cos_theta, e_min, e_max } => Some(-cos_theta / (e_max - e_min)),
            Self::Tabulated { .. } => None,
        }
    }

    /// Cut of the opposite outcome, `1 - P`.
    pub fn complement(&self) -> Self {
        match self {
            Self::FieldAnalytic { cos_theta, e_min, e_max } => Self::FieldAnalytic {
                cos_theta: -cos_theta,
                e_min: *e_min,
                e_max: *e_max,
            },
            Self::Tabulated { grid, values, source } => Self::Tabulated {
                grid: *grid,
                values: values.iter().map(|v| 1.0 - v).collect(),
                source: *source,
            },
        }
    }

    fn values_on(&self, grid: &EnergyGrid) -> Result<Vec<f64>> {
        match self {
            Self::Tabulated { grid: own, values, .. } => {
                if own != grid {
                    return Err(Error::GridMismatch);
                }
                Ok(values.clone())
            }
            _ => Ok(grid.centers().into_iter().map(|e| self.evaluate(e)).collect()),
        }
    }
}

/// Cutting function of a spin measured along polar angle `theta` for
/// noninteracting spins in a field, `½ - cos θ · E/(e_max - e_min)`.
pub fn cutting_function_field(theta: f64, e_min: f64, e_max: f64) -> Result<CuttingFunction> {
    if !(e_max > e_min) {
        return Err(Error::InvalidInterval { low: e_min, high: e_max });
    }
    Ok(CuttingFunction::FieldAnalytic {
        cos_theta: theta.cos(),
        e_min,
        e_max,
    })
}

/// Multiplies `g` by `cut` bin by bin and renormalizes. Returns the new
/// distribution and the normalization `B = ∫ cut·g dE`, which is the
/// probability of the outcome.
pub fn apply_cut(g: &EnergyDistribution, cut: &CuttingFunction) -> Result<(EnergyDistribution, f64)> {
    let values = cut.values_on(&g.grid)?;
    let densities: Vec<f64> = g.densities.iter().zip(&values).map(|(d, v)| d * v).collect();
    let mut out = EnergyDistribution::from_densities(g.grid, densities)?;
    let b = out.total_mass() / g.total_mass();
    if !(b >= 1e-14) {
        return Err(Error::ZeroProbabilityOutcome { normalization: b });
    }
    out.normalize()?;
    Ok((out, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn field_cut_values() {
        let half = cutting_function_field(FRAC_PI_2, -1.0, 1.0).unwrap();
        assert!((half.evaluate(0.7) - 0.5).abs() < 1e-15);
        let z = cutting_function_field(0.0, -1.0, 1.0).unwrap();
        assert_eq!(z.evaluate(-1.0), 1.0);
        let flipped = cutting_function_field(PI, -1.0, 1.0).unwrap();
        assert!((flipped.evaluate(-0.9) - 0.05).abs() < 1e-15);
        assert!(cutting_function_field(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn constant_cut_keeps_distribution() {
        let grid = EnergyGrid::covering(-1.0, 1.0, 16).unwrap();
        let g = EnergyDistribution::gaussian(grid, 0.2, 0.3).unwrap();
        let cut = cutting_function_field(FRAC_PI_2, -1.0, 1.0).unwrap();
        let (out, b) = apply_cut(&g, &cut).unwrap();
        assert!((b - 0.5).abs() < 1e-15);
        assert!(crate::spectral::delta_g(&g, &out).unwrap() < 1e-14);
    }

    #[test]
    fn indicator_cut_selects_one_peak() {
        let grid = EnergyGrid::covering(-1.0, 1.0, 20).unwrap();
        let g = EnergyDistribution::from_point_masses(grid, [(-0.9, 0.5), (0.9, 0.5)]);
        let values = grid.centers().iter().map(|e| if *e < 0.0 { 1.0 } else { 0.0 }).collect();
        let cut = CuttingFunction::Tabulated { grid, values, source: CutSource::PairExact };
        let (out, b) = apply_cut(&g, &cut).unwrap();
        assert!((b - 0.5).abs() < 1e-15);
        assert!((out.mass_below(0.0) - 1.0).abs() < 1e-15);
        let nothing = cut.complement();
        let single = EnergyDistribution::from_point_masses(grid, [(-0.9, 1.0)]);
        assert!(matches!(apply_cut(&single, &nothing), Err(Error::ZeroProbabilityOutcome { .. })));
    }

    #[test]
    fn repeated_flipped_cuts_drain_the_lower_peak() {
        let grid = EnergyGrid::covering(-1.0, 1.0, 20).unwrap();
        let mut g = EnergyDistribution::from_point_masses(grid, [(-0.9, 0.5), (0.9, 0.5)]);
        let cut = cutting_function_field(PI, -1.0, 1.0).unwrap();
        let mut last = g.mass_below(0.0);
        for _ in 0..5 {
            g = apply_cut(&g, &cut).unwrap().0;
            let now = g.mass_below(0.0);
            assert!(now < last);
            last = now;
        }
        assert!(last < 1e-4);
    }
}
