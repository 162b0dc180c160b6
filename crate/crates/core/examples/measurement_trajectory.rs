//! A single quantum trajectory: evolve between random local projective
//! measurements and watch the energy.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stab::evolution::{evolve, imaginary_time_prep, random_state_with, DEFAULT_DT};
use stab::measurement::{build_schedule, measure_spin, sample_axis, Chain, ScheduleMode};
use stab::spin::HamiltonianSpec;

fn main() -> stab::Result<()> {
    let n = 10;
    let spec = HamiltonianSpec::reference_xyz(n);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut psi = imaginary_time_prep(&spec, &random_state_with(n, &mut rng), 0.2)?;
    let chain = Chain { n_sites: n, periodic: true };
    let schedule = build_schedule(ScheduleMode::Pair, 8, chain, 0.0, 2.0, &mut rng)?;
    println!("mean delay {:.3}, tau_m {:.3}", schedule.mean_delay(), schedule.tau_m(n));
    println!("start: <E> = {:+.4}", spec.energy_expectation(&psi)?);
    let mut time = 0.0;
    for (&site, &delay) in schedule.sites.iter().zip(&schedule.delays) {
        psi = evolve(&spec, &psi, delay, DEFAULT_DT)?.state;
        time += delay;
        let (theta, phi) = sample_axis(&mut rng);
        let (next, event) = measure_spin(&psi, site, theta, phi, time, &mut rng)?;
        psi = next;
        println!(
            "t = {:6.3} site {:2} outcome (theta {:.3}, phi {:.3}) p = {:.3} -> <E> = {:+.4}",
            event.time,
            event.site,
            event.theta,
            event.phi,
            event.born_probability,
            spec.energy_expectation(&psi)?
        );
    }
    Ok(())
}
