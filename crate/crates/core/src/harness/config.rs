use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analytics::{AxisSet, Sampling};
use crate::error::{Error, Result};
use crate::measurement::ScheduleMode;
use crate::spin::{Coupling, HamiltonianSpec, REFERENCE_COUPLINGS};

/// Largest chain whose state vector the harness will allocate (1 GiB of amplitudes).
pub const MAX_STATE_SITES: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Fig2Analytic,
    Fig3Wavefunction,
    Fig4Heating,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HamiltonianKind {
    Field,
    Xyz,
}

/// How `g(E)` snapshots are estimated along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimator {
    /// Eigenbasis projection (needs a diagonalizable size).
    Exact,
    /// Windowed Fourier transform of the autocorrelation series.
    Spectral,
}

/// Every run parameter. Serialized as flat TOML whose keys are the field
/// names; missing keys take the defaults of the selected experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub kind: HamiltonianKind,
    pub n_sites: usize,
    pub h_z: f64,
    pub j_x: f64,
    pub j_y: f64,
    pub j_z: f64,
    pub periodic: bool,
    pub schedule_mode: ScheduleMode,
    pub delay_low: f64,
    pub delay_high: f64,
    /// One temperature for a canonical start, two for a two-peak superposition.
    pub temperatures: Vec<f64>,
    pub n_measurements: usize,
    pub n_trajectories: usize,
    /// Bins across `[E_min, E_max]`.
    pub bin_count: usize,
    pub dt: f64,
    pub n_time_samples: usize,
    pub window_alpha: f64,
    pub estimator: Estimator,
    pub master_seed: u64,
    pub output_path: String,
    /// Chain lengths of the heating experiment.
    pub sizes: Vec<usize>,
    /// `(E₁, E₂)` peak pairs of the analytic experiment, on `[-1, 1]`.
    pub energy_pairs: Vec<[f64; 2]>,
    pub mc_trials: usize,
    pub mc_axes: AxisSet,
    pub mc_sampling: Sampling,
}

impl ExperimentConfig {
    pub fn for_experiment(experiment: Experiment) -> Self {
        let [j_x, j_y, j_z] = REFERENCE_COUPLINGS;
        let base = Self {
            experiment,
            kind: HamiltonianKind::Xyz,
            n_sites: 12,
            h_z: 1.0,
            j_x,
            j_y,
            j_z,
            periodic: true,
            schedule_mode: ScheduleMode::Pair,
            delay_low: 0.0,
            delay_high: 2.0,
            temperatures: vec![0.1, -0.1],
            n_measurements: 10,
            n_trajectories: 50,
            bin_count: crate::spectral::DEFAULT_BIN_COUNT,
            dt: crate::evolution::DEFAULT_DT,
            n_time_samples: 2048,
            window_alpha: 3.0,
            estimator: Estimator::Spectral,
            master_seed: 0,
            output_path: "out".into(),
            sizes: vec![8, 10, 12],
            energy_pairs: vec![[-0.9, 0.9], [-0.9, 0.0], [-0.9, -0.6]],
            mc_trials: 100_000,
            mc_axes: AxisSet::Sphere,
            mc_sampling: Sampling::Uniform,
        };
        match experiment {
            Experiment::Fig2Analytic => Self {
                n_measurements: 20,
                ..base
            },
            Experiment::Fig4Heating => Self {
                schedule_mode: ScheduleMode::Single,
                temperatures: vec![0.1],
                n_trajectories: 100,
                estimator: Estimator::Exact,
                ..base
            },
            Experiment::Fig3Wavefunction | Experiment::Custom => base,
        }
    }

    /// Parses flat TOML over the defaults of `experiment` (or of the
    /// file's own `experiment` key when `experiment` is `None`).
    pub fn from_toml_str(text: &str, experiment: Option<Experiment>) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        if let Some((key, _)) = table.iter().find(|(_, v)| v.is_table()) {
            return Err(Error::Config(format!("config is flat; `{key}` is a table")));
        }
        let from_file = match table.get("experiment") {
            Some(v) => Some(
                Experiment::deserialize(v.clone()).map_err(|e| Error::Config(e.to_string()))?,
            ),
            None => None,
        };
        let chosen = experiment.or(from_file).unwrap_or(Experiment::Custom);
        let mut merged = toml::Table::try_from(Self::for_experiment(chosen)).map_err(|e| Error::Config(e.to_string()))?;
        merged.extend(table);
        merged.insert("experiment".into(), toml::Value::try_from(chosen).map_err(|e| Error::Config(e.to_string()))?);
        let config: Self = merged.try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path, experiment: Option<Experiment>) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text, experiment)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn hamiltonian(&self) -> HamiltonianSpec {
        self.hamiltonian_for(self.n_sites)
    }

    pub fn hamiltonian_for(&self, n_sites: usize) -> HamiltonianSpec {
        let coupling = match self.kind {
            HamiltonianKind::Field => Coupling::Field { h_z: self.h_z },
            HamiltonianKind::Xyz => Coupling::Xyz {
                j_x: self.j_x,
                j_y: self.j_y,
                j_z: self.j_z,
                periodic: self.periodic,
            },
        };
        HamiltonianSpec { n_sites, coupling }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.dt > 0.0) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if self.bin_count == 0 {
            return bad("bin_count must be positive".into());
        }
        if self.n_time_samples < crate::spectral::MIN_SERIES_LEN {
            return bad(format!(
                "n_time_samples must be at least {}",
                crate::spectral::MIN_SERIES_LEN
            ));
        }
        if !(self.delay_low >= 0.0 && self.delay_low <= self.delay_high) {
            return Err(Error::InvalidInterval {
                low: self.delay_low,
                high: self.delay_high,
            });
        }
        if self.temperatures.contains(&0.0) {
            return Err(Error::ZeroTemperature);
        }
        if self.mc_trials == 0 {
            return bad("mc_trials must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = ExperimentConfig::for_experiment(Experiment::Fig4Heating);
        let back = ExperimentConfig::from_toml_str(&c.to_toml_string(), None).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn overrides_and_experiment_selection() {
        let c = ExperimentConfig::from_toml_str("n_sites = 8\nmaster_seed = 5\n", Some(Experiment::Fig4Heating)).unwrap();
        assert_eq!(c.n_sites, 8);
        assert_eq!(c.master_seed, 5);
        assert_eq!(c.schedule_mode, ScheduleMode::Single);
        let d = ExperimentConfig::from_toml_str("experiment = \"fig2-analytic\"\n", None).unwrap();
        assert_eq!(d.experiment, Experiment::Fig2Analytic);
        assert_eq!(d.n_measurements, 20);
    }

    #[test]
    fn rejects_unknown_keys_tables_and_bad_values() {
        assert!(ExperimentConfig::from_toml_str("n_site = 8\n", None).is_err());
        assert!(ExperimentConfig::from_toml_str("[hamiltonian]\nn_sites = 8\n", None).is_err());
        assert!(ExperimentConfig::from_toml_str("delay_low = 3.0\n", None).is_err());
        assert!(ExperimentConfig::from_toml_str("temperatures = [0.0]\n", None).is_err());
    }
}
