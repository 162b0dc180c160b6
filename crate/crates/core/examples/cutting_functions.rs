//! Cutting functions: the analytic field cut applied to a histogram, and the
//! pair-measurement cut of an interacting chain from its eigenbasis.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stab::analytics::{
    apply_cut, cutting_function_field, narrowing_estimates, pair_cutting_function, simulate_field_narrowing,
    LocalAxis,
};
use stab::spectral::{distribution_moments, EnergyDistribution, EnergyGrid};
use stab::spin::{exact_spectrum, HamiltonianSpec};

fn main() -> stab::Result<()> {
    let grid = EnergyGrid::covering(-1.0, 1.0, 200)?;
    let g = EnergyDistribution::gaussian(grid, 0.2, 0.1)?;
    let cut = cutting_function_field(0.0, -1.0, 1.0)?;
    let (after, b) = apply_cut(&g, &cut)?;
    println!(
        "z cut on a Gaussian at 0.2: outcome probability {b:.4}, mean {:+.4} -> {:+.4}",
        distribution_moments(&g).0,
        distribution_moments(&after).0
    );

    let trace = simulate_field_narrowing(&g, 20, -1.0, 1.0, &mut ChaCha8Rng::seed_from_u64(1))?;
    println!(
        "1/w^2 after 0, 10, 20 random cuts: {:.1}, {:.1}, {:.1}",
        trace.inverse_width_sq[0], trace.inverse_width_sq[10], trace.inverse_width_sq[20]
    );
    let est = narrowing_estimates(48.0, 0.5, 24, 4.8, 0.1)?;
    println!("tau_c = {}, n_c = {:.2}", est.tau_c, est.n_critical);

    let spec = HamiltonianSpec::reference_xyz(8);
    let s = exact_spectrum(&spec, true)?;
    let grid = EnergyGrid::covering(s.e_min, s.e_max, 16)?;
    let a = LocalAxis { site: 0, theta: 0.3, phi: 0.0 };
    let b = LocalAxis { site: 1, theta: 2.5, phi: 1.0 };
    let pair = pair_cutting_function(&spec, a, b, 0.7, &s, grid)?;
    for bin in (0..grid.n_bins).filter(|k| pair.counts[*k] > 0) {
        println!(
            "E = {:+.3} ({:3} levels): {:.4} = 1/4 + {:+.4} + {:+.4} + {:+.4}",
            grid.center(bin),
            pair.counts[bin],
            pair.values()[bin],
            pair.single_spin[bin],
            pair.two_spin[bin],
            pair.three_spin[bin]
        );
    }
    Ok(())
}
