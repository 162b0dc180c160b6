//! Real-time RK4 propagation, imaginary-time thermal state preparation and
//! random typicality states.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::spin::{HamiltonianSpec, Kernel, SpinState};

/// Time step used by the reference experiments.
pub const DEFAULT_DT: f64 = 0.025;

/// Imaginary-time steps satisfy `Δβ · ‖H‖ ≤ IMAGINARY_STEP_SCALE`.
pub const IMAGINARY_STEP_SCALE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Real,
    Imaginary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub dt: f64,
    pub n_steps: usize,
    pub direction: Direction,
}

impl EvolutionParams {
    pub fn real(dt: f64, n_steps: usize) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        Ok(Self {
            dt,
            n_steps,
            direction: Direction::Real,
        })
    }

    pub fn total_time(&self) -> f64 {
        self.dt * self.n_steps as f64
    }
}

/// Fourth-order Taylor step `Σ_{m≤4} (step·H)^m/m! |ψ⟩` with scratch buffers.
pub(crate) struct Stepper {
    kernel: Kernel,
    term: Vec<Complex64>,
    next: Vec<Complex64>,
}

impl Stepper {
    pub(crate) fn new(spec: &HamiltonianSpec) -> Self {
        let dim = spec.dim();
        Self {
            kernel: spec.kernel(),
            term: vec![Complex64::new(0.0, 0.0); dim],
            next: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// `ψ ← ψ + ν₁ + … + ν₄` with `ν_m = (factor/m) H ν_{m-1}`.
    pub(crate) fn step(&mut self, psi: &mut [Complex64], factor: Complex64) {
        self.term.copy_from_slice(psi);
        for m in 1..=4 {
            self.kernel.apply_into(&self.term, &mut self.next);
            let f = factor / m as f64;
            for (t, n) in self.term.iter_mut().zip(&self.next) {
                *t = f * n;
            }
            for (p, t) in psi.iter_mut().zip(&self.term) {
                *p += t;
            }
        }
    }
}

/// One RK4 step of `e^{-iH dt}`.
pub fn rk4_step(spec: &HamiltonianSpec, psi: &SpinState, dt: f64) -> Result<SpinState> {
    psi.check_dim(spec.n_sites)?;
    let mut out = psi.clone();
    Stepper::new(spec).step(out.amplitudes_mut(), Complex64::new(0.0, -dt));
    Ok(out)
}

/// Result of [`evolve`]: the renormalized state and `‖ψ‖ - 1` just before
/// renormalization.
#[derive(Debug, Clone)]
pub struct Propagated {
    pub state: SpinState,
    pub norm_drift: f64,
}

/// Evolves to `t_total` in steps of `dt`; the last step is shortened to land
/// on `t_total` exactly. Renormalizes once at the end.
pub fn evolve(spec: &HamiltonianSpec, psi: &SpinState, t_total: f64, dt: f64) -> Result<Propagated> {
    psi.check_dim(spec.n_sites)?;
    if !(t_total >= 0.0) {
        return Err(Error::InvalidParameter(format!("t_total must be nonnegative, got {t_total}")));
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    let mut state = psi.clone();
    let before = state.norm();
    let mut stepper = Stepper::new(spec);
    for step in step_sizes(t_total, dt) {
        stepper.step(state.amplitudes_mut(), Complex64::new(0.0, -step));
    }
    let after = state.normalize();
    Ok(Propagated {
        state,
        norm_drift: after - before,
    })
}

/// Full steps of `dt` followed by one remainder step if needed.
pub(crate) fn step_sizes(t_total: f64, dt: f64) -> impl Iterator<Item = f64> {
    let ratio = t_total / dt;
    let mut full = ratio.floor() as usize;
    // absorb rounding so that 0.5/0.025 counts as 20 full steps
    if ratio - (full as f64) > 1.0 - 1e-9 {
        full += 1;
    }
    let rest = t_total - full as f64 * dt;
    let tail = (rest > 1e-12 * dt).then_some(rest);
    std::iter::repeat_n(dt, full).chain(tail)
}

/// Normalized state with i.i.d. complex Gaussian amplitudes.
pub fn random_infinite_temperature_state(n_sites: usize, rng_seed: u64) -> SpinState {
    random_state_with(n_sites, &mut ChaCha8Rng::seed_from_u64(rng_seed))
}

pub fn random_state_with<R: Rng + ?Sized>(n_sites: usize, rng: &mut R) -> SpinState {
    let amplitudes = (0..1usize << n_sites)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    SpinState::from_amplitudes(n_sites, amplitudes)
        .expect("length matches by construction")
        .normalized()
}

/// Thermal typicality state together with its log weight.
#[derive(Debug, Clone)]
pub struct ThermalState {
    pub state: SpinState,
    /// `ln ‖e^{-H/(2T)} ψ‖²` for the normalized input `ψ`.
    pub log_weight: f64,
}

/// `e^{-H/(2T)}|ψ⟩`, renormalized, so that eigenstate probabilities are
/// reweighted by `e^{-E/T}`.
pub fn imaginary_time_prep(spec: &HamiltonianSpec, psi: &SpinState, temperature: f64) -> Result<SpinState> {
    Ok(imaginary_time_prep_weighted(spec, psi, temperature)?.state)
}

pub fn imaginary_time_prep_weighted(
    spec: &HamiltonianSpec,
    psi: &SpinState,
    temperature: f64,
) -> Result<ThermalState> {
    psi.check_dim(spec.n_sites)?;
    if temperature == 0.0 {
        return Err(Error::ZeroTemperature);
    }
    let mut state = psi.clone();
    let mut log_weight = 2.0 * state.normalize().ln();
    if state.norm() == 0.0 {
        return Err(Error::Underflow);
    }
    let tau = 0.5 / temperature;
    let bound = spec.norm_bound();
    if bound == 0.0 || tau == 0.0 {
        return Ok(ThermalState { state, log_weight });
    }
    if !tau.is_finite() {
        return Err(Error::Underflow);
    }
    let max_step = IMAGINARY_STEP_SCALE / bound;
    let n_steps = (tau.abs() / max_step).ceil().max(1.0) as usize;
    let step = tau / n_steps as f64;
    let mut stepper = Stepper::new(spec);
    for _ in 0..n_steps {
        stepper.step(state.amplitudes_mut(), Complex64::new(-step, 0.0));
        let norm = state.normalize();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Underflow);
        }
        log_weight += 2.0 * norm.ln();
    }
    Ok(ThermalState { state, log_weight })
}

/// Normalized `ψ_a + ψ_b`.
pub fn two_peak_superposition(psi_a: &SpinState, psi_b: &SpinState) -> Result<SpinState> {
    psi_b.check_dim(psi_a.n_sites())?;
    let mut sum = psi_a.clone();
    sum.axpy(Complex64::new(1.0, 0.0), psi_b);
    let norm = sum.norm();
    if norm < 1e-12 * (psi_a.norm() + psi_b.norm()).max(f64::MIN_POSITIVE) {
        return Err(Error::ZeroSuperposition);
    }
    Ok(sum.normalized())
}
