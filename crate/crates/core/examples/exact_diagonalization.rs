//! Full spectrum of the periodic XYZ chain and a few thermal averages.

use stab::spin::{canonical_width, exact_spectrum, HamiltonianSpec};

fn main() -> stab::Result<()> {
    let spec = HamiltonianSpec::reference_xyz(10);
    let s = exact_spectrum(&spec, false)?;
    println!("N = 10, dim = {}", s.dim());
    println!("E_min = {:.6}, E_max = {:.6}, span = {:.6}", s.e_min, s.e_max, s.span());
    println!("ground-state degeneracy: {}", s.levels(1e-9)[0].1);
    for t in [0.25, 0.5, 1.0, 2.0, -0.5] {
        println!(
            "T = {t:5}: <E> = {:+.5}, width = {:.5}",
            s.canonical_energy(t)?,
            canonical_width(&s, t)?
        );
    }
    Ok(())
}
