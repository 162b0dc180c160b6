//! Local projective spin measurements with Born-rule outcome sampling and
//! the random measurement schedules.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin::SpinState;

/// Outcomes with Born weight below this are treated as impossible.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-14;

/// A realized measurement: spin `site` found pointing along (theta, phi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementEvent {
    pub site: usize,
    pub theta: f64,
    pub phi: f64,
    pub time: f64,
    pub born_probability: f64,
}

/// Applies `|θφ⟩⟨θφ|` on `site` and returns the normalized result with
/// the Born weight `⟨ψ|P|ψ⟩`.
pub fn apply_projector(psi: &SpinState, site: usize, theta: f64, phi: f64) -> Result<(SpinState, f64)> {
    let n = psi.n_sites();
    if site >= n {
        return Err(Error::SiteOutOfRange { site, n_sites: n });
    }
    let up = (theta / 2.0).cos();
    let down = Complex64::from_polar((theta / 2.0).sin(), phi);
    let mut out = psi.clone();
    let bit = 1usize << site;
    let amps = out.amplitudes_mut();
    for i in 0..amps.len() {
        if i & bit != 0 {
            continue;
        }
        let j = i | bit;
        let overlap = up * amps[i] + down.conj() * amps[j];
        amps[i] = overlap * up;
        amps[j] = overlap * down;
    }
    let probability = out.norm_sqr() / psi.norm_sqr();
    if !(probability >= MIN_OUTCOME_PROBABILITY) {
        return Err(Error::OrthogonalOutcome { probability });
    }
    out.normalize();
    Ok((out, probability))
}

/// Born weight of finding `site` along (theta, phi), without projecting.
pub fn outcome_probability(psi: &SpinState, site: usize, theta: f64, phi: f64) -> Result<f64> {
    let n = psi.n_sites();
    if site >= n {
        return Err(Error::SiteOutOfRange { site, n_sites: n });
    }
    let up = (theta / 2.0).cos();
    let down = Complex64::from_polar((theta / 2.0).sin(), phi);
    let bit = 1usize << site;
    let amps = psi.amplitudes();
    let p: f64 = (0..amps.len())
        .filter(|i| i & bit == 0)
        .map(|i| (up * amps[i] + down.conj() * amps[i | bit]).norm_sqr())
        .sum();
    Ok(p / psi.norm_sqr())
}

/// Opposite orientation on the sphere, with phi wrapped to [0, 2π).
pub fn antipode(theta: f64, phi: f64) -> (f64, f64) {
    (PI - theta, (phi + PI).rem_euclid(2.0 * PI))
}

/// Measures `site` along the given axis. The spin ends up along the axis
/// with its Born probability, otherwise along the antipode.
pub fn measure_spin<R: Rng + ?Sized>(
    psi: &SpinState,
    site: usize,
    axis_theta: f64,
    axis_phi: f64,
    time: f64,
    rng: &mut R,
) -> Result<(SpinState, MeasurementEvent)> {
    psi.check_normalized(1e-6)?;
    let p_plus = outcome_probability(psi, site, axis_theta, axis_phi)?;
    let u: f64 = rng.random();
    let along = if p_plus < MIN_OUTCOME_PROBABILITY {
        false
    } else if 1.0 - p_plus < MIN_OUTCOME_PROBABILITY {
        true
    } else {
        u < p_plus
    };
    let (theta, phi) = if along {
        (axis_theta, axis_phi.rem_euclid(2.0 * PI))
    } else {
        antipode(axis_theta, axis_phi)
    };
    let (state, born_probability) = apply_projector(psi, site, theta, phi)?;
    Ok((
        state,
        MeasurementEvent {
            site,
            theta,
            phi,
            time,
            born_probability,
        },
    ))
}

/// Uniform direction on the sphere: `cos θ ~ U[-1, 1]`, `φ ~ U[0, 2π)`.
pub fn sample_axis<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let cos_theta: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    (cos_theta.clamp(-1.0, 1.0).acos(), phi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleMode {
    /// Every measurement on an independently chosen site.
    Single,
    /// Odd measurements on a random site, each even one on a nearest
    /// neighbour of the preceding site.
    Pair,
}

/// Lattice geometry used to pick neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chain {
    pub n_sites: usize,
    pub periodic: bool,
}

impl Chain {
    pub fn neighbours(&self, site: usize) -> Vec<usize> {
        let n = self.n_sites;
        let mut out = Vec::with_capacity(2);
        if site > 0 {
            out.push(site - 1);
        } else if self.periodic && n >= 3 {
            out.push(n - 1);
        }
        if site + 1 < n {
            out.push(site + 1);
        } else if self.periodic && n >= 3 {
            out.push(0);
        }
        out.dedup();
        out
    }

    pub fn are_neighbours(&self, a: usize, b: usize) -> bool {
        self.neighbours(a).contains(&b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub mode: ScheduleMode,
    pub sites: Vec<usize>,
    /// `delays[n]` is the waiting time before measurement `n`.
    pub delays: Vec<f64>,
    pub delay_low: f64,
    pub delay_high: f64,
}

impl Schedule {
    pub fn n_events(&self) -> usize {
        self.sites.len()
    }

    /// Mean waiting time between consecutive measurements of the chain.
    pub fn mean_delay(&self) -> f64 {
        0.5 * (self.delay_low + self.delay_high)
    }

    /// Mean time between measurements of one given spin, `τ_m`.
    pub fn tau_m(&self, n_sites: usize) -> f64 {
        self.mean_delay() * n_sites as f64
    }

    /// Times of each measurement, starting from zero.
    pub fn times(&self) -> Vec<f64> {
        self.delays
            .iter()
            .scan(0.0, |t, d| {
                *t += d;
                Some(*t)
            })
            .collect()
    }
}

pub fn build_schedule<R: Rng + ?Sized>(
    mode: ScheduleMode,
    n_events: usize,
    chain: Chain,
    delay_low: f64,
    delay_high: f64,
    rng: &mut R,
) -> Result<Schedule> {
    if !(delay_low <= delay_high) || delay_low < 0.0 {
        return Err(Error::InvalidInterval {
            low: delay_low,
            high: delay_high,
        });
    }
    if chain.n_sites == 0 || (mode == ScheduleMode::Pair && chain.n_sites < 2) {
        return Err(Error::InvalidParameter(format!(
            "{mode:?} schedule needs more sites than {}",
            chain.n_sites
        )));
    }
    let mut sites = Vec::with_capacity(n_events);
    let mut delays = Vec::with_capacity(n_events);
    for k in 0..n_events {
        let site = match mode {
            ScheduleMode::Pair if k % 2 == 1 => {
                let nb = chain.neighbours(sites[k - 1]);
                nb[rng.random_range(0..nb.len())]
            }
            _ => rng.random_range(0..chain.n_sites),
        };
        sites.push(site);
        delays.push(if delay_high > delay_low {
            rng.random_range(delay_low..delay_high)
        } else {
            delay_low
        });
    }
    Ok(Schedule {
        mode,
        sites,
        delays,
        delay_low,
        delay_high,
    })
}
