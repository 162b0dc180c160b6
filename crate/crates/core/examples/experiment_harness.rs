//! Running a small heating experiment from a TOML config and writing the
//! CSV files and manifest.

use std::time::Instant;

use stab::harness::{emit_outputs, run_fig4_experiment, Experiment, ExperimentConfig, Outputs};

const CONFIG: &str = r#"
sizes = [6, 8]
n_trajectories = 40
n_measurements = 6
temperatures = [0.2]
master_seed = 11
"#;

fn main() -> stab::Result<()> {
    let config = ExperimentConfig::from_toml_str(CONFIG, Some(Experiment::Fig4Heating))?;
    let start = Instant::now();
    let rows = run_fig4_experiment(&config)?;
    for r in rows.iter().filter(|r| r.n % 2 == 0) {
        println!("N = {:2} n = {}: drift {:+.4} +- {:.4}", r.n_sites, r.n, r.drift_mean, r.drift_stderr);
    }
    let dir = std::env::temp_dir().join("stab-example");
    for path in emit_outputs(&Outputs::Fig4(rows), &config, &dir, start.elapsed())? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
