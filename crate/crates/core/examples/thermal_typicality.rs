//! Thermal pure states by imaginary-time evolution of random vectors,
//! compared with canonical averages from the full spectrum.

use stab::evolution::{imaginary_time_prep, random_infinite_temperature_state, two_peak_superposition};
use stab::spin::{exact_spectrum, HamiltonianSpec};

fn main() -> stab::Result<()> {
    let n = 10;
    let spec = HamiltonianSpec::reference_xyz(n);
    let s = exact_spectrum(&spec, false)?;
    for (seed, t) in [(1, 0.5), (2, 1.0), (3, -0.5)] {
        let psi = imaginary_time_prep(&spec, &random_infinite_temperature_state(n, seed), t)?;
        println!(
            "T = {t:4}: typical <E> = {:+.4}, canonical <E> = {:+.4}",
            spec.energy_expectation(&psi)?,
            s.canonical_energy(t)?
        );
    }
    let cold = imaginary_time_prep(&spec, &random_infinite_temperature_state(n, 4), 0.1)?;
    let hot = imaginary_time_prep(&spec, &random_infinite_temperature_state(n, 5), -0.1)?;
    let both = two_peak_superposition(&cold, &hot)?;
    println!(
        "two-peak state: <E> = {:+.4} between {:+.4} and {:+.4}",
        spec.energy_expectation(&both)?,
        spec.energy_expectation(&cold)?,
        spec.energy_expectation(&hot)?
    );
    Ok(())
}
