//! Applying H to a state vector without building the matrix.

use stab::evolution::random_infinite_temperature_state;
use stab::spin::{HamiltonianSpec, SpinState};

fn main() -> stab::Result<()> {
    let spec = HamiltonianSpec::reference_xyz(16);
    println!("{} bonds, |H| <= {:.4}", spec.bonds().len(), spec.norm_bound());

    // all spins up: only the S_z S_z terms contribute
    let up = SpinState::basis(16, 0);
    println!("<up|H|up> = {:+.6}", spec.energy_expectation(&up)?);

    // a random state sits near the middle of the spectrum
    let psi = random_infinite_temperature_state(16, 1);
    println!("<psi|H|psi> = {:+.6}", spec.energy_expectation(&psi)?);

    // nonzero elements of one row on a short chain: one flip per bond plus the diagonal
    let small = HamiltonianSpec::reference_xyz(4);
    let mut row = Vec::new();
    small.for_each_element(0b0110, |target, value| row.push(format!("{target:04b}: {value:+.3}")));
    println!("row of |0110> on 4 sites: {}", row.join(", "));
    Ok(())
}
