use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::config::ExperimentConfig;
use crate::harness::run::{Fig2Fit, Fig2Row, Fig4Row, TrajectoryRecord};

/// Results of one experiment, ready to be written.
#[derive(Debug, Clone)]
pub enum Outputs {
    Fig2 { rows: Vec<Fig2Row>, fits: Vec<Fig2Fit> },
    Trajectories(Vec<TrajectoryRecord>),
    Fig4(Vec<Fig4Row>),
}

impl Outputs {
    fn is_empty(&self) -> bool {
        match self {
            Self::Fig2 { rows, .. } => rows.is_empty(),
            Self::Trajectories(r) => r.is_empty(),
            Self::Fig4(r) => r.is_empty(),
        }
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    master_seed: u64,
    code_version: &'static str,
    wall_time_seconds: f64,
    files: Vec<String>,
    config: &'a ExperimentConfig,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV files as `(file name, contents)`, without touching the disk.
pub fn render_csv(outputs: &Outputs) -> Result<Vec<(String, String)>> {
    if outputs.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let mut files = Vec::new();
    match outputs {
        Outputs::Fig2 { rows, fits } => {
            let mut csv = String::from("pair_id,n,mean,std_error\n");
            for r in rows {
                writeln!(csv, "{},{},{},{}", r.pair_id, r.n, num(r.mean), num(r.std_error)).unwrap();
            }
            files.push(("fig2.csv".into(), csv));
            let mut csv = String::from("pair_id,e1,e2,lambda,kappa\n");
            for f in fits {
                writeln!(csv, "{},{},{},{},{}", f.pair_id, num(f.e1), num(f.e2), num(f.lambda), num(f.kappa)).unwrap();
            }
            files.push(("fig2_fits.csv".into(), csv));
        }
        Outputs::Trajectories(records) => {
            let mut dist = String::from("trajectory,snapshot,bin_center,density\n");
            let mut series = String::from("trajectory,snapshot,measurements,delta_g,heating,lower_peak_weight\n");
            let mut events = String::from("trajectory,index,site,theta,phi,time,born_probability\n");
            for r in records {
                let snapshots = r.initial.iter().chain(&r.distributions);
                for (s, g) in snapshots.enumerate() {
                    for (c, d) in g.bin_centers().iter().zip(&g.densities) {
                        writeln!(dist, "{},{},{},{}", r.trajectory, s, num(*c), num(*d)).unwrap();
                    }
                }
                for (s, after) in r.snapshot_after.iter().enumerate() {
                    writeln!(
                        series,
                        "{},{},{},{},{},{}",
                        r.trajectory,
                        s + 1,
                        after,
                        num(r.delta_g_series[s]),
                        num(r.heating_series[s]),
                        num(r.lower_peak_weight[s])
                    )
                    .unwrap();
                }
                for (i, e) in r.events.iter().enumerate() {
                    writeln!(
                        events,
                        "{},{},{},{},{},{},{}",
                        r.trajectory,
                        i,
                        e.site,
                        num(e.theta),
                        num(e.phi),
                        num(e.time),
                        num(e.born_probability)
                    )
                    .unwrap();
                }
            }
            files.push(("fig3.csv".into(), dist));
            files.push(("fig3_series.csv".into(), series));
            files.push(("fig3_events.csv".into(), events));
        }
        Outputs::Fig4(rows) => {
            let mut csv = String::from("N,n,drift_mean,drift_stderr\n");
            for r in rows {
                writeln!(csv, "{},{},{},{}", r.n_sites, r.n, num(r.drift_mean), num(r.drift_stderr)).unwrap();
            }
            files.push(("fig4.csv".into(), csv));
        }
    }
    Ok(files)
}

/// Writes the CSV files and `manifest.toml` (config echo, seed, code
/// version, wall time) into `dir`. Returns the paths written.
pub fn emit_outputs(outputs: &Outputs, config: &ExperimentConfig, dir: &Path, wall_time: Duration) -> Result<Vec<PathBuf>> {
    let files = render_csv(outputs)?;
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| Error::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    for (name, contents) in &files {
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(io(&path))?;
        written.push(path);
    }
    let manifest = Manifest {
        master_seed: config.master_seed,
        code_version: env!("CARGO_PKG_VERSION"),
        wall_time_seconds: wall_time.as_secs_f64(),
        files: files.iter().map(|(n, _)| n.clone()).collect(),
        config,
    };
    let path = dir.join("manifest.toml");
    let text = toml::to_string(&manifest).map_err(|e| Error::Config(e.to_string()))?;
    std::fs::write(&path, text).map_err(io(&path))?;
    written.push(path);
    Ok(written)
}
