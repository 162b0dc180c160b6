use std::time::Duration;

use stab::harness::*;
use stab::measurement::ScheduleMode;
use stab::Error;

fn small_fig4() -> ExperimentConfig {
    ExperimentConfig {
        sizes: vec![6, 8],
        n_trajectories: 12,
        n_measurements: 4,
        master_seed: 17,
        ..ExperimentConfig::for_experiment(Experiment::Fig4Heating)
    }
}

fn small_custom() -> ExperimentConfig {
    ExperimentConfig {
        n_sites: 6,
        n_trajectories: 4,
        n_measurements: 4,
        n_time_samples: 256,
        master_seed: 3,
        ..ExperimentConfig::for_experiment(Experiment::Custom)
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn csv_is_identical_across_thread_counts() {
    let fig4 = |t| in_pool(t, || render_csv(&Outputs::Fig4(run_fig4_experiment(&small_fig4()).unwrap())).unwrap());
    assert_eq!(fig4(1), fig4(4));
    let custom = |t| in_pool(t, || render_csv(&Outputs::Trajectories(run_trajectories(&small_custom()).unwrap().1)).unwrap());
    assert_eq!(custom(1), custom(4));
    let mut fig2 = ExperimentConfig::for_experiment(Experiment::Fig2Analytic);
    fig2.mc_trials = 10_000;
    fig2.n_measurements = 4;
    let run2 = |t| in_pool(t, || {
        let (rows, fits) = run_fig2_experiment(&fig2).unwrap();
        render_csv(&Outputs::Fig2 { rows, fits }).unwrap()
    });
    assert_eq!(run2(1), run2(3));
}

#[test]
fn different_seeds_differ() {
    let a = run_fig4_experiment(&small_fig4()).unwrap();
    let b = run_fig4_experiment(&ExperimentConfig { master_seed: 18, ..small_fig4() }).unwrap();
    assert_ne!(a, b);
}

#[test]
fn pair_schedule_snapshots_every_second_measurement() {
    let config = ExperimentConfig {
        n_trajectories: 1,
        ..ExperimentConfig::for_experiment(Experiment::Fig3Wavefunction)
    };
    let (ctx, records) = run_fig3_experiment(&config).unwrap();
    let r = &records[0];
    assert_eq!(r.events.len(), 10);
    assert_eq!(r.distributions.len(), 5);
    assert_eq!(r.snapshot_after, vec![2, 4, 6, 8, 10]);
    assert!(r.initial.is_some());
    for g in &r.distributions {
        assert_eq!(g.grid, ctx.grid);
        assert!((g.total_mass() - 1.0).abs() < 1e-12);
    }
    for pair in r.events.chunks(2) {
        let chain = stab::measurement::Chain { n_sites: 12, periodic: true };
        assert!(chain.are_neighbours(pair[0].site, pair[1].site));
    }
}

#[test]
fn fig3_rejects_single_temperature() {
    let config = ExperimentConfig {
        temperatures: vec![0.1],
        ..ExperimentConfig::for_experiment(Experiment::Fig3Wavefunction)
    };
    assert!(matches!(run_fig3_experiment(&config), Err(Error::Config(_))));
}

#[test]
fn empty_outputs_are_rejected() {
    assert!(matches!(render_csv(&Outputs::Fig4(Vec::new())), Err(Error::EmptyRecords)));
    assert!(matches!(render_csv(&Outputs::Trajectories(Vec::new())), Err(Error::EmptyRecords)));
}

#[test]
fn manifest_records_seed_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_fig4();
    let rows = run_fig4_experiment(&config).unwrap();
    let written = emit_outputs(&Outputs::Fig4(rows), &config, dir.path(), Duration::from_millis(1500)).unwrap();
    assert_eq!(written.len(), 2);
    let manifest: toml::Table = std::fs::read_to_string(dir.path().join("manifest.toml")).unwrap().parse().unwrap();
    assert_eq!(manifest["master_seed"].as_integer(), Some(17));
    assert_eq!(manifest["wall_time_seconds"].as_float(), Some(1.5));
    assert_eq!(manifest["config"]["sizes"].as_array().unwrap().len(), 2);
    let csv = std::fs::read_to_string(dir.path().join("fig4.csv")).unwrap();
    assert!(csv.starts_with("N,n,drift_mean,drift_stderr\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 5);
}

#[test]
fn equal_peaks_give_zero_difference() {
    let config = ExperimentConfig {
        energy_pairs: vec![[0.3, 0.3]],
        mc_trials: 1000,
        ..ExperimentConfig::for_experiment(Experiment::Fig2Analytic)
    };
    let (rows, fits) = run_fig2_experiment(&config).unwrap();
    assert!(rows.iter().all(|r| r.mean == 0.0 && r.std_error == 0.0));
    assert_eq!(fits[0].lambda, 0.0);
}

#[test]
fn drift_starts_at_zero_and_follows_temperature_sign() {
    let rows = run_fig4_experiment(&small_fig4()).unwrap();
    for r in rows.iter().filter(|r| r.n == 0) {
        assert_eq!(r.drift_mean, 0.0);
    }
    let last = rows.iter().find(|r| r.n_sites == 8 && r.n == 4).unwrap();
    assert!(last.drift_mean > 0.0);
    let hot = run_fig4_experiment(&ExperimentConfig { temperatures: vec![-0.1], ..small_fig4() }).unwrap();
    let last = hot.iter().find(|r| r.n_sites == 8 && r.n == 4).unwrap();
    assert!(last.drift_mean < 0.0);
}

#[test]
fn exact_and_spectral_heating_agree_roughly() {
    let exact = run_fig4_experiment(&ExperimentConfig { sizes: vec![8], ..small_fig4() }).unwrap();
    let spectral = run_fig4_experiment(&ExperimentConfig {
        sizes: vec![8],
        estimator: Estimator::Spectral,
        ..small_fig4()
    })
    .unwrap();
    let (a, b) = (exact.last().unwrap(), spectral.last().unwrap());
    assert!((a.drift_mean - b.drift_mean).abs() < 0.05, "{a:?} {b:?}");
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "n_sites = 10\nschedule_mode = \"single\"\ntemperatures = [0.5]\nmaster_seed = 9\n").unwrap();
    let config = ExperimentConfig::from_file(&path, Some(Experiment::Custom)).unwrap();
    assert_eq!(config.n_sites, 10);
    assert_eq!(config.schedule_mode, ScheduleMode::Single);
    assert_eq!(config.master_seed, 9);
    assert_eq!(config.bin_count, 64);
    let again = ExperimentConfig::from_toml_str(&config.to_toml_string(), None).unwrap();
    assert_eq!(again, config);
}

#[test]
fn config_errors() {
    assert!(matches!(ExperimentConfig::from_toml_str("n_sitez = 4", None), Err(Error::Config(_))));
    assert!(matches!(ExperimentConfig::from_toml_str("[chain]\nn_sites = 4", None), Err(Error::Config(_))));
    assert!(matches!(ExperimentConfig::from_toml_str("temperatures = [0.0]", None), Err(Error::ZeroTemperature)));
    assert!(matches!(
        ExperimentConfig::from_toml_str("delay_low = 3.0", None),
        Err(Error::InvalidInterval { .. })
    ));
    let missing = ExperimentConfig::from_file("/nonexistent/run.toml".as_ref(), None);
    assert!(matches!(missing, Err(Error::Io { .. })));
}

#[test]
fn too_many_sites_is_reported() {
    let config = ExperimentConfig { n_sites: 40, ..small_custom() };
    assert!(run_trajectories(&config).is_err());
}

#[test]
fn command_line_fig2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fig2.toml");
    std::fs::write(&cfg, "mc_trials = 2000\nn_measurements = 3\n").unwrap();
    let out = dir.path().join("out");
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_stab"))
        .args(["fig2", "--seed", "4", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let csv = std::fs::read_to_string(out.join("fig2.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 3);
    assert!(out.join("fig2_fits.csv").exists());
    let bad = std::process::Command::new(env!("CARGO_BIN_EXE_stab"))
        .args(["fig4", "--exact", "--spectral"])
        .output()
        .unwrap();
    assert!(!bad.status.success());
}
