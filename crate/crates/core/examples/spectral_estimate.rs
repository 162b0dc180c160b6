//! Energy distribution from the Kaiser-windowed autocorrelation transform,
//! next to the exact projection onto eigenstates.

use stab::evolution::{imaginary_time_prep, random_infinite_temperature_state, DEFAULT_DT};
use stab::spectral::{
    autocorrelation_series, delta_g, distribution_moments, exact_binned_g, kaiser_bessel_window, spectral_g,
    EnergyGrid,
};
use stab::spin::{exact_spectrum, HamiltonianSpec};

fn main() -> stab::Result<()> {
    let n = 10;
    let spec = HamiltonianSpec::reference_xyz(n);
    let s = exact_spectrum(&spec, true)?;
    let grid = EnergyGrid::covering(s.e_min, s.e_max, 64)?;
    let psi = imaginary_time_prep(&spec, &random_infinite_temperature_state(n, 1), 0.5)?;
    let exact = exact_binned_g(&psi, &s, grid)?;
    println!("window edge w(0) = {:.4e}", kaiser_bessel_window(0, 2048, 3.0));
    for samples in [1024, 2048, 4096] {
        let series = autocorrelation_series(&spec, &psi, DEFAULT_DT, samples)?;
        let est = spectral_g(&series, 3.0, grid)?;
        let (mean, width) = distribution_moments(&est.distribution);
        println!(
            "{samples:5} samples: L1 to exact {:.3}, mean {:+.4}, width {:.4}, clipped mass {:.2e}",
            delta_g(&exact, &est.distribution)?,
            mean,
            width,
            est.clipped_mass
        );
    }
    let (mean, width) = distribution_moments(&exact);
    println!("exact: mean {mean:+.4}, width {width:.4}");
    print!("{}", exact.to_csv().lines().take(6).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}
