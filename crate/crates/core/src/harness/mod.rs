//! Configured, seeded batch experiments and their file outputs.

mod config;
mod emit;
mod run;

pub use config::{Estimator, Experiment, ExperimentConfig, HamiltonianKind, MAX_STATE_SITES};
pub use emit::{emit_outputs, render_csv, Outputs};
pub use run::{
    initial_state, run_fig2_experiment, run_fig3_experiment, run_fig4_experiment, run_trajectories,
    run_trajectory, ChainContext, Fig2Fit, Fig2Row, Fig4Row, TrajectoryRecord,
};
