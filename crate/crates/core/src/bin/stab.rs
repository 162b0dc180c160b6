use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use stab::harness::{
    emit_outputs, run_fig2_experiment, run_fig3_experiment, run_fig4_experiment, run_trajectories, Estimator,
    Experiment, ExperimentConfig, Outputs,
};

#[derive(Parser)]
#[command(name = "stab", version, about = "Measurement stability experiments on spin-1/2 chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Outcome-averaged ΔḠ(n) of the two-peak cutting model, with λ and κ fits.
    Fig2(RunArgs),
    /// Two-peak XYZ wavefunction under nearest-neighbour pair measurements.
    Fig3(RunArgs),
    /// Mean-energy drift under single-spin measurements for several sizes.
    Fig4(RunArgs),
    /// Trajectories with the schedule and temperatures given in the config.
    Custom(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Flat TOML file; keys are ExperimentConfig field names.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (defaults to the config's output_path).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Estimate g(E) by eigenbasis projection.
    #[arg(long, conflicts_with = "spectral")]
    exact: bool,
    /// Estimate g(E) from the windowed autocorrelation transform.
    #[arg(long)]
    spectral: bool,
    #[arg(long)]
    trajectories: Option<usize>,
    #[arg(long)]
    sites: Option<usize>,
}

fn load(experiment: Experiment, args: &RunArgs) -> stab::Result<ExperimentConfig> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::from_file(path, Some(experiment))?,
        None => ExperimentConfig::for_experiment(experiment),
    };
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    if args.exact {
        config.estimator = Estimator::Exact;
    }
    if args.spectral {
        config.estimator = Estimator::Spectral;
    }
    if let Some(t) = args.trajectories {
        config.n_trajectories = t;
    }
    if let Some(n) = args.sites {
        config.n_sites = n;
        if experiment == Experiment::Fig4Heating {
            config.sizes = vec![n];
        }
    }
    if let Some(out) = &args.out {
        config.output_path = out.to_string_lossy().into_owned();
    }
    config.validate()?;
    Ok(config)
}

fn run(experiment: Experiment, args: &RunArgs) -> stab::Result<()> {
    let config = load(experiment, args)?;
    let start = Instant::now();
    let outputs = match experiment {
        Experiment::Fig2Analytic => {
            let (rows, fits) = run_fig2_experiment(&config)?;
            for f in &fits {
                eprintln!("pair {} ({}, {}): lambda = {:.4}, kappa = {:.4}", f.pair_id, f.e1, f.e2, f.lambda, f.kappa);
            }
            Outputs::Fig2 { rows, fits }
        }
        Experiment::Fig3Wavefunction => Outputs::Trajectories(run_fig3_experiment(&config)?.1),
        Experiment::Fig4Heating => Outputs::Fig4(run_fig4_experiment(&config)?),
        Experiment::Custom => Outputs::Trajectories(run_trajectories(&config)?.1),
    };
    let written = emit_outputs(&outputs, &config, config.output_path.as_ref(), start.elapsed())?;
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (experiment, args) = match &cli.command {
        Command::Fig2(a) => (Experiment::Fig2Analytic, a),
        Command::Fig3(a) => (Experiment::Fig3Wavefunction, a),
        Command::Fig4(a) => (Experiment::Fig4Heating, a),
        Command::Custom(a) => (Experiment::Custom, a),
    };
    match run(experiment, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
