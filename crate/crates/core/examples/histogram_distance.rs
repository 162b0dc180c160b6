//! Binned energy distributions: construction, L1 distance, regridding and
//! mass below a threshold.

use stab::spectral::{delta_g, distribution_moments, EnergyDistribution, EnergyGrid};

fn main() -> stab::Result<()> {
    let grid = EnergyGrid::covering(-2.0, 2.0, 64)?;
    let a = EnergyDistribution::gaussian(grid, -0.5, 0.3)?;
    let b = EnergyDistribution::gaussian(grid, 0.5, 0.3)?;
    let peaks = EnergyDistribution::from_point_masses(grid, [(-1.0, 0.5), (1.0, 0.5)]);
    println!("{} bins of width {:.4} from {:+.4}", grid.n_bins, grid.bin_width, grid.first_center);
    println!("L1(a, b) = {:.4}", delta_g(&a, &b)?);
    println!("L1(a, peaks) = {:.4}", delta_g(&a, &peaks)?);
    println!("mass of two peaks below 0: {:.3}", peaks.mass_below(0.0));

    let coarse = EnergyGrid::covering(-2.0, 2.0, 16)?;
    let a_coarse = a.resample(coarse)?;
    let (m, w) = distribution_moments(&a_coarse);
    println!("resampled to 16 bins: mean {m:+.4}, width {w:.4}");
    match delta_g(&a, &a_coarse) {
        Ok(d) => println!("{d}"),
        Err(e) => println!("different grids: {e}"),
    }
    Ok(())
}
