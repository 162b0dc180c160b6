use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::{mean_stderr, substream};

/// Parameters of the two-peak cutting model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutModelParams {
    pub e1: f64,
    pub e2: f64,
    pub e_min: f64,
    pub e_max: f64,
    /// Mean absolute cut slope. For field cuts this is `1/(e_max - e_min)`.
    pub u: f64,
    pub kappa: Option<f64>,
    pub lambda: Option<f64>,
}

impl CutModelParams {
    /// Peaks at `e1`, `e2` on `[e_min, e_max]` with `u = 1/(e_max - e_min)`.
    pub fn two_peak(e1: f64, e2: f64, e_min: f64, e_max: f64) -> Result<Self> {
        if !(e_max > e_min) {
            return Err(Error::InvalidInterval { low: e_min, high: e_max });
        }
        Ok(Self {
            e1,
            e2,
            e_min,
            e_max,
            u: 1.0 / (e_max - e_min),
            kappa: None,
            lambda: None,
        })
    }

    pub fn span(&self) -> f64 {
        self.e_max - self.e_min
    }

    /// Sets `κ` and the rate `λ = κ u² (e1 - e2)²`.
    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = Some(kappa);
        self.lambda = Some(kappa * self.u * self.u * (self.e1 - self.e2).powi(2));
        self
    }

    /// Sets `λ` and the implied `κ = λ / (u² (e1 - e2)²)`.
    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self.kappa = Some(kappa_from_lambda(lambda, self.u, self.e1, self.e2));
        self
    }

    fn scaled(&self) -> (f64, f64) {
        (self.e1 / self.span(), self.e2 / self.span())
    }
}

/// `κ = λ / (u² (e1 - e2)²)`.
pub fn kappa_from_lambda(lambda: f64, u: f64, e1: f64, e2: f64) -> f64 {
    lambda / (u * u * (e1 - e2).powi(2))
}

/// Which measurement axes are averaged over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxisSet {
    /// Uniform on the sphere, `c = cos θ ∈ [-1, 1]`.
    #[default]
    Sphere,
    /// Only `θ ∈ {0, π}`, `c = ±1`.
    ZOnly,
}

/// How `c` sequences are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// `c` uniform, estimator `½·2ⁿ·|f₁ - f₂|`.
    #[default]
    Uniform,
    /// `c` drawn from the outcome distribution `(f₁ + f₂)/2`, estimator
    /// `|f₁ - f₂|/(f₁ + f₂)`. Bounded by 1, so its variance stays small
    /// at large `n`.
    BornWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct McOptions {
    pub axes: AxisSet,
    pub sampling: Sampling,
}

/// Trials per independently seeded chunk.
const CHUNK: usize = 4096;

/// Monte Carlo estimate of the outcome-averaged
/// `ΔḠ(n) = ½ ∫ |Π(½ - c_i E₁') - Π(½ - c_i E₂')| dc₁…dc_n` with
/// `E' = E/(e_max - e_min)`. Returns `(mean, standard error)`.
///
/// Trials are split into chunks with their own substream of `seed`, so the
/// result is independent of the thread count.
pub fn mc_avg_delta_g_two_peak(
    params: &CutModelParams,
    n: usize,
    trials: usize,
    seed: u64,
    options: McOptions,
) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if n == 0 || params.e1 == params.e2 {
        return Ok((0.0, 0.0));
    }
    let (a1, a2) = params.scaled();
    let scale = 0.5 * 2f64.powi(n as i32);
    let n_chunks = trials.div_ceil(CHUNK);
    let values: Vec<f64> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = substream(seed, chunk as u64);
            let len = CHUNK.min(trials - chunk * CHUNK);
            let mut c = vec![0.0; n];
            (0..len)
                .map(|_| {
                    match options.sampling {
                        Sampling::Uniform => {
                            for ci in c.iter_mut() {
                                *ci = match options.axes {
                                    AxisSet::Sphere => rng.random_range(-1.0..=1.0),
                                    AxisSet::ZOnly => sign(rng.random()),
                                };
                            }
                        }
                        Sampling::BornWeighted => {
                            let a = if rng.random::<bool>() { a1 } else { a2 };
                            for ci in c.iter_mut() {
                                let u: f64 = rng.random();
                                *ci = match options.axes {
                                    AxisSet::Sphere => sample_linear(a, u),
                                    AxisSet::ZOnly => sign(u < 0.5 - a),
                                };
                            }
                        }
                    }
                    let f1: f64 = c.iter().map(|ci| 0.5 - ci * a1).product();
                    let f2: f64 = c.iter().map(|ci| 0.5 - ci * a2).product();
                    match options.sampling {
                        Sampling::Uniform => scale * (f1 - f2).abs(),
                        Sampling::BornWeighted => (f1 - f2).abs() / (f1 + f2),
                    }
                })
                .collect::<Vec<f64>>()
        })
        .flatten()
        .collect();
    Ok(mean_stderr(&values))
}

fn sign(up: bool) -> f64 {
    if up {
        1.0
    } else {
        -1.0
    }
}

/// Inverse CDF of the density `½ - a c` on `[-1, 1]` (`|a| ≤ ½`).
fn sample_linear(a: f64, u: f64) -> f64 {
    let k = 2.0 * u - 1.0 - a;
    let disc = (1.0 - 4.0 * a * k).max(0.0);
    (2.0 * k / (1.0 + disc.sqrt())).clamp(-1.0, 1.0)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let nf = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if order == 0 { 1.0 } else { p1 };
            dp = nf * (x * p - p0) / (x * x - 1.0);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

/// Tensor-product Gauss–Legendre evaluation of the same integral as
/// [`mc_avg_delta_g_two_peak`] over the sphere. Cost `order^n`, so `n` is
/// capped at 5.
pub fn quadrature_avg_delta_g_two_peak(params: &CutModelParams, n: usize, order: usize) -> Result<f64> {
    if n > 5 {
        return Err(Error::InvalidParameter(format!("quadrature limited to n ≤ 5, got {n}")));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let (a1, a2) = params.scaled();
    let (x, w) = gauss_legendre(order);
    let total = order.pow(n as u32);
    let sum: f64 = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let (mut f1, mut f2, mut weight) = (1.0, 1.0, 1.0);
            for _ in 0..n {
                let j = idx % order;
                idx /= order;
                f1 *= 0.5 - x[j] * a1;
                f2 *= 0.5 - x[j] * a2;
                weight *= w[j];
            }
            weight * (f1 - f2).abs()
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum();
    Ok(0.5 * sum)
}

/// `½ Σ_k |D_{n,p₁}(k) - D_{n,p₂}(k)|` for binomial distributions `D`.
pub fn binomial_avg_delta_g(n: usize, p1: f64, p2: f64) -> Result<f64> {
    for p in [p1, p2] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
        }
    }
    let a = binomial_pmf(n, p1);
    let b = binomial_pmf(n, p2);
    Ok(0.5 * a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum::<f64>())
}

/// `p = ½ - E/(e_max - e_min)`: probability of the `θ = 0` outcome on a peak at `E`.
pub fn z_outcome_probability(energy: f64, e_min: f64, e_max: f64) -> f64 {
    0.5 - energy / (e_max - e_min)
}

fn binomial_pmf(n: usize, p: f64) -> Vec<f64> {
    let mut pmf = vec![0.0; n + 1];
    if p == 0.0 || p == 1.0 {
        pmf[if p == 0.0 { 0 } else { n }] = 1.0;
        return pmf;
    }
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let mut ln_choose = 0.0;
    for (k, slot) in pmf.iter_mut().enumerate() {
        if k > 0 {
            ln_choose += ((n - k + 1) as f64).ln() - (k as f64).ln();
        }
        *slot = (ln_choose + k as f64 * lp + (n - k) as f64 * lq).exp();
    }
    pmf
}

/// `√(1 - e^{-λn})`.
pub fn approx_delta_g(n: f64, lambda: f64) -> f64 {
    (1.0 - (-lambda * n).exp()).max(0.0).sqrt()
}

/// Least-squares `λ` for `ΔḠ(n)² ≈ 1 - e^{-λn}` over `(n, ΔḠ)` pairs.
pub fn fit_lambda(data: &[(f64, f64)]) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::InvalidParameter("no data to fit".into()));
    }
    let cost = |lambda: f64| -> f64 {
        data.iter()
            .map(|(n, v)| (v * v - (1.0 - (-lambda * n).exp())).powi(2))
            .sum()
    };
    // coarse log scan, then golden-section refinement around the best point
    let grid: Vec<f64> = (0..=160).map(|i| 10f64.powf(-6.0 + i as f64 * 0.05)).collect();
    let best = (0..grid.len())
        .min_by(|a, b| cost(grid[*a]).total_cmp(&cost(grid[*b])))
        .unwrap();
    let mut lo = if best == 0 { 0.0 } else { grid[best - 1] };
    let mut hi = grid[(best + 1).min(grid.len() - 1)];
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (cost(x1), cost(x2));
    while hi - lo > 1e-12 * hi.max(1e-12) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = cost(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = cost(x2);
        }
    }
    Ok(0.5 * (lo + hi))
}
