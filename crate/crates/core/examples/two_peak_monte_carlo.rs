//! Outcome-averaged distance between two energy peaks under random field
//! cuts, with the fitted decay rate.

use stab::analytics::{
    approx_delta_g, binomial_avg_delta_g, fit_lambda, mc_avg_delta_g_two_peak, z_outcome_probability, AxisSet,
    CutModelParams, McOptions, Sampling,
};

fn main() -> stab::Result<()> {
    let params = CutModelParams::two_peak(-0.9, 0.0, -1.0, 1.0)?;
    let sphere = McOptions::default();
    let born = McOptions { sampling: Sampling::BornWeighted, ..sphere };
    let mut data = Vec::new();
    for n in 1..=20 {
        let (mean, se) = mc_avg_delta_g_two_peak(&params, n, 100_000, n as u64, sphere)?;
        let (b, b_se) = mc_avg_delta_g_two_peak(&params, n, 100_000, n as u64, born)?;
        println!("n = {n:2}: {mean:.4} +- {se:.4} (Born-weighted {b:.4} +- {b_se:.4})");
        data.push((n as f64, mean));
    }
    let lambda = fit_lambda(&data)?;
    let fitted = params.with_lambda(lambda);
    println!("lambda = {lambda:.4}, kappa = {:.4}", fitted.kappa.unwrap());
    println!("sqrt(1 - exp(-lambda*9)) = {:.4}", approx_delta_g(9.0, lambda));

    let z = McOptions { axes: AxisSet::ZOnly, sampling: Sampling::Uniform };
    let (p1, p2) = (z_outcome_probability(-0.9, -1.0, 1.0), z_outcome_probability(0.0, -1.0, 1.0));
    let (mc, se) = mc_avg_delta_g_two_peak(&params, 6, 100_000, 0, z)?;
    println!("z axes only, n = 6: {mc:.4} +- {se:.4}, binomial {:.4}", binomial_avg_delta_g(6, p1, p2)?);
    Ok(())
}
