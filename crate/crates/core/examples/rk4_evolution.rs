//! Real-time propagation with the fourth-order Taylor (RK4) step.

use stab::evolution::{evolve, rk4_step, random_infinite_temperature_state, DEFAULT_DT};
use stab::spin::HamiltonianSpec;

fn main() -> stab::Result<()> {
    let spec = HamiltonianSpec::reference_xyz(12);
    let psi = random_infinite_temperature_state(12, 3);
    let e0 = spec.energy_expectation(&psi)?;
    let one = rk4_step(&spec, &psi, DEFAULT_DT)?;
    println!("one step: |<psi|psi(dt)>| = {:.12}", one.inner(&psi).norm());
    for t in [1.0, 10.0, 51.2] {
        let out = evolve(&spec, &psi, t, DEFAULT_DT)?;
        let e = spec.energy_expectation(&out.state)?;
        println!(
            "t = {t:5}: norm drift {:+.2e}, energy drift {:+.2e}, |<psi(0)|psi(t)>| = {:.4}",
            out.norm_drift,
            e - e0,
            out.state.inner(&psi).norm()
        );
    }
    Ok(())
}
