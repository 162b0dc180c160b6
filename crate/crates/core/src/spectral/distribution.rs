use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Bins on either side of `[e_min, e_max]` added by [`EnergyGrid::covering`].
pub const GRID_MARGIN_BINS: usize = 2;

/// Number of bins across the spectral span used by default.
pub const DEFAULT_BIN_COUNT: usize = 64;

/// Uniform grid of bin centers `first_center + k·bin_width`, `k < n_bins`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyGrid {
    pub first_center: f64,
    pub bin_width: f64,
    pub n_bins: usize,
}

impl EnergyGrid {
    pub fn new(first_center: f64, bin_width: f64, n_bins: usize) -> Result<Self> {
        if !(bin_width > 0.0) || !bin_width.is_finite() || n_bins == 0 || !first_center.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid needs positive width and bins (width {bin_width}, bins {n_bins})"
            )));
        }
        Ok(Self {
            first_center,
            bin_width,
            n_bins,
        })
    }

    /// Grid with `bins_across` bins spanning `[e_min, e_max]`, centers on both
    /// edges, plus two margin bins on each side.
    pub fn covering(e_min: f64, e_max: f64, bins_across: usize) -> Result<Self> {
        if !(e_max > e_min) {
            return Err(Error::InvalidInterval { low: e_min, high: e_max });
        }
        if bins_across == 0 {
            return Err(Error::InvalidParameter("bins_across must be positive".into()));
        }
        let width = (e_max - e_min) / bins_across as f64;
        Self::new(
            e_min - GRID_MARGIN_BINS as f64 * width,
            width,
            bins_across + 1 + 2 * GRID_MARGIN_BINS,
        )
    }

    pub fn center(&self, bin: usize) -> f64 {
        self.first_center + bin as f64 * self.bin_width
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_bins).map(|b| self.center(b)).collect()
    }

    pub fn low_edge(&self) -> f64 {
        self.first_center - 0.5 * self.bin_width
    }

    pub fn high_edge(&self) -> f64 {
        self.center(self.n_bins - 1) + 0.5 * self.bin_width
    }

    /// Bin whose interval `[c - Δ/2, c + Δ/2)` contains `energy`, if any.
    pub fn bin_of(&self, energy: f64) -> Option<usize> {
        let x = ((energy - self.first_center) / self.bin_width + 0.5).floor();
        (x >= 0.0 && x < self.n_bins as f64).then_some(x as usize)
    }

    /// Like [`bin_of`](Self::bin_of), but energies off the grid go to the
    /// nearest edge bin.
    pub fn clamped_bin(&self, energy: f64) -> usize {
        let x = ((energy - self.first_center) / self.bin_width + 0.5).floor();
        x.clamp(0.0, (self.n_bins - 1) as f64) as usize
    }

    fn same_as(&self, other: &EnergyGrid) -> bool {
        let tol = 1e-12 * self.bin_width.abs().max(self.first_center.abs());
        self.n_bins == other.n_bins
            && (self.bin_width - other.bin_width).abs() <= 1e-12 * self.bin_width
            && (self.first_center - other.first_center).abs() <= tol
    }
}

/// Binned energy density `g(E)`; `Σ densities · bin_width` is the total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDistribution {
    pub grid: EnergyGrid,
    pub densities: Vec<f64>,
}

impl EnergyDistribution {
    pub fn zeros(grid: EnergyGrid) -> Self {
        Self {
            grid,
            densities: vec![0.0; grid.n_bins],
        }
    }

    pub fn from_densities(grid: EnergyGrid, densities: Vec<f64>) -> Result<Self> {
        if densities.len() != grid.n_bins {
            return Err(Error::DimensionMismatch {
                expected: grid.n_bins,
                found: densities.len(),
            });
        }
        Ok(Self { grid, densities })
    }

    /// Distribution from per-bin probabilities (masses).
    pub fn from_masses(grid: EnergyGrid, masses: Vec<f64>) -> Result<Self> {
        let width = grid.bin_width;
        Self::from_densities(grid, masses.into_iter().map(|m| m / width).collect())
    }

    /// Accumulates point masses at the given energies.
    pub fn from_point_masses(grid: EnergyGrid, points: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut g = Self::zeros(grid);
        for (energy, mass) in points {
            g.densities[grid.clamped_bin(energy)] += mass / grid.bin_width;
        }
        g
    }

    /// Discretized Gaussian `exp(-(E-mean)²/(2 width²))`, normalized.
    pub fn gaussian(grid: EnergyGrid, mean: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::InvalidParameter(format!("width must be positive, got {width}")));
        }
        let densities = grid
            .centers()
            .into_iter()
            .map(|e| (-(e - mean).powi(2) / (2.0 * width * width)).exp())
            .collect();
        let mut g = Self { grid, densities };
        g.normalize()?;
        Ok(g)
    }

    pub fn bin_width(&self) -> f64 {
        self.grid.bin_width
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        self.grid.centers()
    }

    pub fn masses(&self) -> Vec<f64> {
        self.densities.iter().map(|d| d * self.grid.bin_width).collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.densities.iter().sum::<f64>() * self.grid.bin_width
    }

    /// Rescales to unit mass and returns the previous mass.
    pub fn normalize(&mut self) -> Result<f64> {
        let mass = self.total_mass();
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::ZeroProbabilityOutcome { normalization: mass });
        }
        self.densities.iter_mut().for_each(|d| *d /= mass);
        Ok(mass)
    }

    /// Mass in bins whose centers lie strictly below `energy`.
    pub fn mass_below(&self, energy: f64) -> f64 {
        self.grid
            .centers()
            .iter()
            .zip(&self.densities)
            .filter(|(c, _)| **c < energy)
            .map(|(_, d)| d)
            .sum::<f64>()
            * self.grid.bin_width
    }

    /// Linear interpolation of the density onto `grid` (zero outside the
    /// source grid's centers), renormalized to unit mass.
    pub fn resample(&self, grid: EnergyGrid) -> Result<EnergyDistribution> {
        let src = &self.grid;
        let last = src.n_bins - 1;
        let densities = grid
            .centers()
            .into_iter()
            .map(|e| {
                let x = (e - src.first_center) / src.bin_width;
                if x < 0.0 || x > last as f64 {
                    return 0.0;
                }
                let i = (x.floor() as usize).min(last);
                if i == last {
                    return self.densities[last];
                }
                let f = x - i as f64;
                (1.0 - f) * self.densities[i] + f * self.densities[i + 1]
            })
            .collect();
        let mut g = EnergyDistribution { grid, densities };
        g.normalize()?;
        Ok(g)
    }

    /// CSV with header `bin_center,density`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_center,density\n");
        for (c, d) in self.grid.centers().iter().zip(&self.densities) {
            writeln!(out, "{c:.16e},{d:.16e}").unwrap();
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// L1 distance `Σ |g_a - g_b| Δ_e` between distributions on the same grid.
pub fn delta_g(g_a: &EnergyDistribution, g_b: &EnergyDistribution) -> Result<f64> {
    if !g_a.grid.same_as(&g_b.grid) {
        return Err(Error::GridMismatch);
    }
    let sum: f64 = g_a
        .densities
        .iter()
        .zip(&g_b.densities)
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(sum * g_a.grid.bin_width)
}

/// Mean energy and standard deviation of a normalized distribution.
pub fn distribution_moments(g: &EnergyDistribution) -> (f64, f64) {
    let centers = g.grid.centers();
    let masses = g.masses();
    let total: f64 = masses.iter().sum();
    let mean = centers.iter().zip(&masses).map(|(c, m)| c * m).sum::<f64>() / total;
    let var = centers
        .iter()
        .zip(&masses)
        .map(|(c, m)| (c - mean).powi(2) * m)
        .sum::<f64>()
        / total;
    (mean, var.max(0.0).sqrt())
}
