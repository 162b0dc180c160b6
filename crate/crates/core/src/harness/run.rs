use rayon::prelude::*;
use serde::Serialize;

use crate::analytics::{
    fit_lambda, heating_drift, kappa_from_lambda, mc_avg_delta_g_two_peak, CutModelParams, McOptions,
};
use crate::error::{Error, Result};
use crate::evolution::{evolve, imaginary_time_prep, random_state_with, two_peak_superposition};
use crate::harness::config::{Estimator, ExperimentConfig, HamiltonianKind, MAX_STATE_SITES};
use crate::measurement::{build_schedule, measure_spin, sample_axis, Chain, MeasurementEvent, ScheduleMode};
use crate::spectral::{
    autocorrelation_series, delta_g, exact_binned_g, spectral_g, EnergyDistribution, EnergyGrid,
};
use crate::spin::{exact_spectrum, extremal_energies, HamiltonianSpec, SpinState, Spectrum, MAX_SITES_WITH_VECTORS};
use crate::stats::{mean_stderr, substream};
use rand::Rng;

/// Hamiltonian, spectral edges and energy grid shared by all trajectories
/// of one chain length.
#[derive(Debug, Clone)]
pub struct ChainContext {
    pub spec: HamiltonianSpec,
    /// Present (with eigenvectors) when snapshots use the exact estimator.
    pub spectrum: Option<Spectrum>,
    pub e_min: f64,
    pub e_max: f64,
    pub grid: EnergyGrid,
}

impl ChainContext {
    pub fn prepare(config: &ExperimentConfig, n_sites: usize, want_vectors: bool) -> Result<Self> {
        if n_sites > MAX_STATE_SITES {
            return Err(Error::MemoryBudget {
                n_sites,
                budget_sites: MAX_STATE_SITES,
            });
        }
        if want_vectors && n_sites > MAX_SITES_WITH_VECTORS {
            return Err(Error::TooLarge {
                n_sites,
                cap: MAX_SITES_WITH_VECTORS,
            });
        }
        let spec = config.hamiltonian_for(n_sites);
        let (spectrum, e_min, e_max) = match exact_spectrum(&spec, want_vectors) {
            Ok(s) => {
                let (lo, hi) = (s.e_min, s.e_max);
                (want_vectors.then_some(s), lo, hi)
            }
            Err(Error::TooLarge { .. }) => {
                let (lo, hi) = extremal_energies(&spec, config.master_seed)?;
                (None, lo, hi)
            }
            Err(e) => return Err(e),
        };
        let grid = EnergyGrid::covering(e_min, e_max, config.bin_count)?;
        Ok(Self {
            spec,
            spectrum,
            e_min,
            e_max,
            grid,
        })
    }

    pub fn span(&self) -> f64 {
        self.e_max - self.e_min
    }

    /// Midpoint of the spectrum, separating the two peaks of a `±T` start.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.e_min + self.e_max)
    }

    /// Normalized `g(E)` of `psi` with the configured estimator.
    pub fn estimate(&self, psi: &SpinState, config: &ExperimentConfig) -> Result<EnergyDistribution> {
        match config.estimator {
            Estimator::Exact => {
                let spectrum = self.spectrum.as_ref().ok_or(Error::MissingEigenvectors)?;
                let mut g = exact_binned_g(psi, spectrum, self.grid)?;
                g.normalize()?;
                Ok(g)
            }
            Estimator::Spectral => {
                let series = autocorrelation_series(&self.spec, psi, config.dt, config.n_time_samples)?;
                Ok(spectral_g(&series, config.window_alpha, self.grid)?.distribution)
            }
        }
    }
}

/// Random typicality state at one temperature, or the normalized sum of two.
pub fn initial_state<R: Rng + ?Sized>(spec: &HamiltonianSpec, temperatures: &[f64], rng: &mut R) -> Result<SpinState> {
    let mut thermal = |t: f64| imaginary_time_prep(spec, &random_state_with(spec.n_sites, rng), t);
    match temperatures {
        [t] => thermal(*t),
        [t1, t2] => {
            let a = thermal(*t1)?;
            let b = thermal(*t2)?;
            two_peak_superposition(&a, &b)
        }
        _ => Err(Error::Config(format!(
            "need one or two temperatures, got {}",
            temperatures.len()
        ))),
    }
}

/// One measured trajectory.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub trajectory: usize,
    pub stream: u64,
    pub events: Vec<MeasurementEvent>,
    /// `g₀`, estimated before the first measurement.
    pub initial: Option<EnergyDistribution>,
    /// Snapshots after each even measurement (pair mode) or each
    /// measurement (single mode).
    pub distributions: Vec<EnergyDistribution>,
    /// Measurements performed before each snapshot.
    pub snapshot_after: Vec<usize>,
    /// `ΔG` of each snapshot against `g₀`.
    pub delta_g_series: Vec<f64>,
    /// Heating drift of each snapshot against `g₀`.
    pub heating_series: Vec<f64>,
    /// Mass below the spectral midpoint at each snapshot.
    pub lower_peak_weight: Vec<f64>,
    /// `⟨H⟩` before any measurement and after each one.
    pub energy_series: Vec<f64>,
    /// Exact mass below the spectral midpoint before any measurement and
    /// after each one; empty unless the context carries eigenvectors.
    pub exact_lower_weight: Vec<f64>,
}

/// Runs one trajectory: prepare the initial state, then alternate free
/// evolution over the scheduled delay with a Born-sampled measurement
/// along a random axis.
pub fn run_trajectory(
    config: &ExperimentConfig,
    ctx: &ChainContext,
    trajectory: usize,
    stream: u64,
    with_snapshots: bool,
) -> Result<TrajectoryRecord> {
    let mut rng = substream(config.master_seed, stream);
    let spec = &ctx.spec;
    let mut psi = initial_state(spec, &config.temperatures, &mut rng)?;
    let chain = Chain {
        n_sites: spec.n_sites,
        periodic: spec.is_periodic(),
    };
    let schedule = build_schedule(
        config.schedule_mode,
        config.n_measurements,
        chain,
        config.delay_low,
        config.delay_high,
        &mut rng,
    )?;
    let g0 = if with_snapshots { Some(ctx.estimate(&psi, config)?) } else { None };
    let mut record = TrajectoryRecord {
        trajectory,
        stream,
        events: Vec::with_capacity(schedule.n_events()),
        initial: g0.clone(),
        distributions: Vec::new(),
        snapshot_after: Vec::new(),
        delta_g_series: Vec::new(),
        heating_series: Vec::new(),
        lower_peak_weight: Vec::new(),
        energy_series: vec![spec.energy_expectation(&psi)?],
        exact_lower_weight: Vec::new(),
    };
    let exact_lower = |psi: &SpinState| -> Result<Option<f64>> {
        match &ctx.spectrum {
            Some(s) => Ok(Some(exact_binned_g(psi, s, ctx.grid)?.mass_below(ctx.midpoint()))),
            None => Ok(None),
        }
    };
    record.exact_lower_weight.extend(exact_lower(&psi)?);
    let mut time = 0.0;
    for (k, (&site, &delay)) in schedule.sites.iter().zip(&schedule.delays).enumerate() {
        psi = evolve(spec, &psi, delay, config.dt)?.state;
        time += delay;
        let (theta, phi) = sample_axis(&mut rng);
        let (next, event) = measure_spin(&psi, site, theta, phi, time, &mut rng)?;
        psi = next;
        record.events.push(event);
        record.energy_series.push(spec.energy_expectation(&psi)?);
        record.exact_lower_weight.extend(exact_lower(&psi)?);
        let done = k + 1;
        let snapshot = match config.schedule_mode {
            ScheduleMode::Pair => done % 2 == 0,
            ScheduleMode::Single => true,
        };
        if let (true, Some(g0)) = (snapshot, &g0) {
            let g = ctx.estimate(&psi, config)?;
            record.delta_g_series.push(delta_g(g0, &g)?);
            record.heating_series.push(heating_drift(g0, &g, ctx.e_min, ctx.e_max)?);
            record.lower_peak_weight.push(g.mass_below(ctx.midpoint()));
            record.snapshot_after.push(done);
            record.distributions.push(g);
        }
    }
    Ok(record)
}

/// Trajectories of the configured chain, in trajectory order.
pub fn run_trajectories(config: &ExperimentConfig) -> Result<(ChainContext, Vec<TrajectoryRecord>)> {
    config.validate()?;
    let ctx = ChainContext::prepare(config, config.n_sites, config.estimator == Estimator::Exact)?;
    let records = (0..config.n_trajectories)
        .into_par_iter()
        .map(|j| run_trajectory(config, &ctx, j, j as u64, true))
        .collect::<Result<Vec<_>>>()?;
    Ok((ctx, records))
}

/// Two-peak wavefunction experiment: an XYZ chain measured in
/// nearest-neighbour pairs.
pub fn run_fig3_experiment(config: &ExperimentConfig) -> Result<(ChainContext, Vec<TrajectoryRecord>)> {
    if config.kind != HamiltonianKind::Xyz {
        return Err(Error::Config("the two-peak wavefunction experiment needs kind = \"xyz\"".into()));
    }
    if config.schedule_mode != ScheduleMode::Pair {
        return Err(Error::Config("the two-peak wavefunction experiment needs schedule_mode = \"pair\"".into()));
    }
    if config.temperatures.len() != 2 {
        return Err(Error::Config("the two-peak wavefunction experiment needs two temperatures".into()));
    }
    run_trajectories(config)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig4Row {
    pub n_sites: usize,
    pub n: usize,
    pub drift_mean: f64,
    pub drift_stderr: f64,
}

/// Heating experiment: mean drift of the average energy, scaled by the
/// spectral span, after `n = 0..=n_measurements` single-spin measurements,
/// for every configured chain length.
///
/// With the exact estimator the mean energy is `⟨H⟩` itself, which is the
/// first moment of the unbinned distribution; this needs no eigenvectors.
pub fn run_fig4_experiment(config: &ExperimentConfig) -> Result<Vec<Fig4Row>> {
    config.validate()?;
    if config.schedule_mode != ScheduleMode::Single {
        return Err(Error::Config("the heating experiment needs schedule_mode = \"single\"".into()));
    }
    if config.temperatures.len() != 1 {
        return Err(Error::Config("the heating experiment needs exactly one temperature".into()));
    }
    if config.sizes.is_empty() {
        return Err(Error::Config("sizes must not be empty".into()));
    }
    let mut rows = Vec::new();
    for (size_index, &n_sites) in config.sizes.iter().enumerate() {
        let spectral = config.estimator == Estimator::Spectral;
        let ctx = ChainContext::prepare(config, n_sites, false)?;
        let drifts = (0..config.n_trajectories)
            .into_par_iter()
            .map(|j| {
                let stream = ((size_index as u64) << 32) | j as u64;
                let r = run_trajectory(config, &ctx, j, stream, spectral)?;
                Ok(if spectral {
                    std::iter::once(0.0).chain(r.heating_series).collect()
                } else {
                    r.energy_series.iter().map(|e| (e - r.energy_series[0]) / ctx.span()).collect()
                })
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        for n in 0..=config.n_measurements {
            let at_n: Vec<f64> = drifts.iter().map(|d| d[n]).collect();
            let (drift_mean, drift_stderr) = mean_stderr(&at_n);
            rows.push(Fig4Row {
                n_sites,
                n,
                drift_mean,
                drift_stderr,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig2Row {
    pub pair_id: usize,
    pub n: usize,
    pub mean: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fig2Fit {
    pub pair_id: usize,
    pub e1: f64,
    pub e2: f64,
    pub lambda: f64,
    pub kappa: f64,
}

/// Analytic two-peak experiment on `[-1, 1]`: Monte Carlo `ΔḠ(n)` for
/// `n = 1..=n_measurements` per energy pair, with fitted `λ` and `κ`.
pub fn run_fig2_experiment(config: &ExperimentConfig) -> Result<(Vec<Fig2Row>, Vec<Fig2Fit>)> {
    config.validate()?;
    let options = McOptions {
        axes: config.mc_axes,
        sampling: config.mc_sampling,
    };
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for (pair_id, [e1, e2]) in config.energy_pairs.iter().copied().enumerate() {
        let params = CutModelParams::two_peak(e1, e2, -1.0, 1.0)?;
        let mut data = Vec::new();
        for n in 1..=config.n_measurements {
            let stream = (pair_id as u64) << 32 | n as u64;
            let seed: u64 = substream(config.master_seed, stream).random();
            let (mean, std_error) = mc_avg_delta_g_two_peak(&params, n, config.mc_trials, seed, options)?;
            rows.push(Fig2Row {
                pair_id,
                n,
                mean,
                std_error,
            });
            data.push((n as f64, mean));
        }
        let (lambda, kappa) = if e1 == e2 {
            (0.0, f64::NAN)
        } else {
            let lambda = fit_lambda(&data)?;
            (lambda, kappa_from_lambda(lambda, params.u, e1, e2))
        };
        fits.push(Fig2Fit {
            pair_id,
            e1,
            e2,
            lambda,
            kappa,
        });
    }
    Ok((rows, fits))
}
