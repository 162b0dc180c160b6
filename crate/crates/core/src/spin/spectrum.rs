use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::hamiltonian::{Coupling, HamiltonianSpec};
use crate::error::{Error, Result};

/// Largest chain diagonalized with eigenvectors.
pub const MAX_SITES_WITH_VECTORS: usize = 12;
/// Largest open XYZ chain for eigenvalues only (parity blocks).
pub const MAX_SITES_OPEN_XYZ: usize = 14;
/// Largest periodic XYZ chain for eigenvalues only (momentum and parity blocks).
pub const MAX_SITES_PERIODIC_XYZ: usize = 16;
/// Largest field chain; the ladder is analytic so this only bounds memory.
pub const MAX_SITES_FIELD: usize = 26;

/// Full eigendecomposition of a chain Hamiltonian.
///
/// The Hamiltonians here are real symmetric in the product basis, so the
/// eigenvectors are stored as a real orthogonal matrix (columns are
/// eigenstates, ordered like `eigenvalues`).
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<DMatrix<f64>>,
    pub e_min: f64,
    pub e_max: f64,
}

impl Spectrum {
    fn from_sorted(eigenvalues: Vec<f64>, eigenvectors: Option<DMatrix<f64>>) -> Self {
        let e_min = eigenvalues[0];
        let e_max = *eigenvalues.last().unwrap();
        Self {
            eigenvalues,
            eigenvectors,
            e_min,
            e_max,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn span(&self) -> f64 {
        self.e_max - self.e_min
    }

    pub fn has_vectors(&self) -> bool {
        self.eigenvectors.is_some()
    }

    pub fn vectors(&self) -> Result<&DMatrix<f64>> {
        self.eigenvectors.as_ref().ok_or(Error::MissingEigenvectors)
    }

    /// Distinct levels with their multiplicities, merging values closer than `tol`.
    pub fn levels(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &e in &self.eigenvalues {
            match out.last_mut() {
                Some((level, count)) if (e - *level).abs() <= tol => *count += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    /// Canonical weights `e^{-E/T}/Z`, shifted for stability.
    pub fn canonical_weights(&self, temperature: f64) -> Result<Vec<f64>> {
        if temperature == 0.0 {
            return Err(Error::ZeroTemperature);
        }
        let beta = 1.0 / temperature;
        let shift = if beta > 0.0 { self.e_min } else { self.e_max };
        let mut w: Vec<f64> = self
            .eigenvalues
            .iter()
            .map(|e| (-beta * (e - shift)).exp())
            .collect();
        let z: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= z);
        Ok(w)
    }

    /// Canonical mean energy `E(T)`.
    pub fn canonical_energy(&self, temperature: f64) -> Result<f64> {
        let w = self.canonical_weights(temperature)?;
        Ok(w.iter().zip(&self.eigenvalues).map(|(p, e)| p * e).sum())
    }
}

/// Exact spectrum. The field chain uses its analytic ladder; the XYZ chain
/// is split into parity sectors (and momentum sectors for periodic chains
/// when no vectors are requested) and each block is diagonalized densely.
pub fn exact_spectrum(spec: &HamiltonianSpec, want_vectors: bool) -> Result<Spectrum> {
    spec.check()?;
    let n = spec.n_sites;
    let cap = match (spec.coupling, want_vectors) {
        (_, true) => MAX_SITES_WITH_VECTORS,
        (Coupling::Field { .. }, false) => MAX_SITES_FIELD,
        (Coupling::Xyz { periodic: true, .. }, false) if n >= 3 => MAX_SITES_PERIODIC_XYZ,
        (Coupling::Xyz { .. }, false) => MAX_SITES_OPEN_XYZ,
    };
    if n > cap {
        return Err(Error::TooLarge { n_sites: n, cap });
    }
    match spec.coupling {
        Coupling::Field { h_z } => Ok(field_ladder(n, h_z, want_vectors)),
        Coupling::Xyz { .. } if !want_vectors && spec.is_periodic() && n >= 3 => {
            Ok(momentum_spectrum(spec))
        }
        Coupling::Xyz { .. } => Ok(parity_spectrum(spec, want_vectors)),
    }
}

fn field_ladder(n: usize, h_z: f64, want_vectors: bool) -> Spectrum {
    let dim = 1usize << n;
    let energy = |b: usize| -h_z * (n as f64 - 2.0 * b.count_ones() as f64) / 2.0;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| energy(a).total_cmp(&energy(b)).then(a.cmp(&b)));
    let eigenvalues = order.iter().map(|&b| energy(b)).collect();
    let vectors = want_vectors.then(|| {
        let mut v = DMatrix::zeros(dim, dim);
        for (col, &b) in order.iter().enumerate() {
            v[(b, col)] = 1.0;
        }
        v
    });
    Spectrum::from_sorted(eigenvalues, vectors)
}

/// Product-basis indices with an even (0) or odd (1) number of down spins.
fn parity_sector(dim: usize, parity: u32) -> Vec<usize> {
    (0..dim).filter(|b| b.count_ones() % 2 == parity).collect()
}

fn sector_matrix(spec: &HamiltonianSpec, states: &[usize]) -> DMatrix<f64> {
    let position: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let m = states.len();
    let mut h = DMatrix::zeros(m, m);
    for (col, &s) in states.iter().enumerate() {
        spec.for_each_element(s, |t, v| {
            let row = position[&t];
            h[(row, col)] += v;
        });
    }
    h
}

fn parity_spectrum(spec: &HamiltonianSpec, want_vectors: bool) -> Spectrum {
    let dim = spec.dim();
    // XYZ flips spins in pairs, so the down-spin parity is conserved.
    let sectors: Vec<Vec<usize>> = if spec.n_sites >= 2 {
        vec![parity_sector(dim, 0), parity_sector(dim, 1)]
    } else {
        vec![(0..dim).collect()]
    };

    let mut entries: Vec<(f64, usize, usize)> = Vec::with_capacity(dim);
    let mut block_vectors = Vec::new();
    for (bi, states) in sectors.iter().enumerate() {
        let h = sector_matrix(spec, states);
        if want_vectors {
            let eig = h.symmetric_eigen();
            for (j, &e) in eig.eigenvalues.iter().enumerate() {
                entries.push((e, bi, j));
            }
            block_vectors.push(eig.eigenvectors);
        } else {
            for (j, &e) in h.symmetric_eigenvalues().iter().enumerate() {
                entries.push((e, bi, j));
            }
        }
    }
    entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let eigenvalues = entries.iter().map(|e| e.0).collect();

    let vectors = want_vectors.then(|| {
        let mut v = DMatrix::zeros(dim, dim);
        for (col, &(_, bi, j)) in entries.iter().enumerate() {
            let block = &block_vectors[bi];
            for (row, &s) in sectors[bi].iter().enumerate() {
                v[(s, col)] = block[(row, j)];
            }
        }
        v
    });
    Spectrum::from_sorted(eigenvalues, vectors)
}

fn rotate(s: usize, n: usize, mask: usize) -> usize {
    ((s << 1) | (s >> (n - 1))) & mask
}

/// Representative (smallest rotation) of `s` and the number of rotations
/// that map `s` onto it.
fn representative(s: usize, n: usize, mask: usize) -> (usize, usize) {
    let mut best = (s, 0);
    let mut t = s;
    for j in 1..n {
        t = rotate(t, n, mask);
        if t < best.0 {
            best = (t, j);
        }
    }
    best
}

fn period(s: usize, n: usize, mask: usize) -> usize {
    let mut t = rotate(s, n, mask);
    let mut r = 1;
    while t != s {
        t = rotate(t, n, mask);
        r += 1;
    }
    r
}

/// Eigenvalues of a translation-invariant chain from its (momentum, parity)
/// blocks. Blocks `k` and `-k` are complex conjugates and share a spectrum.
fn momentum_spectrum(spec: &HamiltonianSpec) -> Spectrum {
    let n = spec.n_sites;
    let dim = spec.dim();
    let mask = dim - 1;

    let mut reps: Vec<(usize, usize)> = Vec::new();
    for s in 0..dim {
        if representative(s, n, mask).0 == s {
            reps.push((s, period(s, n, mask)));
        }
    }

    let mut eigenvalues = Vec::with_capacity(dim);
    for m in 0..=n / 2 {
        let copies = if m == 0 || 2 * m == n { 1 } else { 2 };
        let k = 2.0 * std::f64::consts::PI * m as f64 / n as f64;
        for parity in 0..2u32 {
            let basis: Vec<(usize, usize)> = reps
                .iter()
                .copied()
                .filter(|&(s, r)| s.count_ones() % 2 == parity && (m * r) % n == 0)
                .collect();
            if basis.is_empty() {
                continue;
            }
            let index: HashMap<usize, usize> =
                basis.iter().enumerate().map(|(i, &(s, _))| (s, i)).collect();
            let size = basis.len();
            let mut h = DMatrix::<Complex64>::zeros(size, size);
            for (ia, &(a, ra)) in basis.iter().enumerate() {
                spec.for_each_element(a, |t, v| {
                    let (b, shift) = representative(t, n, mask);
                    if let Some(&ib) = index.get(&b) {
                        let rb = basis[ib].1;
                        let amp = v * (ra as f64 / rb as f64).sqrt();
                        h[(ib, ia)] += Complex64::from_polar(amp, -k * shift as f64);
                    }
                });
            }
            let evs = h.symmetric_eigenvalues();
            for _ in 0..copies {
                eigenvalues.extend(evs.iter().copied());
            }
        }
    }
    debug_assert_eq!(eigenvalues.len(), dim);
    eigenvalues.sort_by(f64::total_cmp);
    Spectrum::from_sorted(eigenvalues, None)
}

/// Ground and top energies by Lanczos iteration with full
/// reorthogonalization. Works for any size that fits in memory.
pub fn extremal_energies(spec: &HamiltonianSpec, seed: u64) -> Result<(f64, f64)> {
    spec.check()?;
    let dim = spec.dim();
    let kernel = spec.kernel();
    let steps = dim.min(160);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut q: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
        .collect();
    let norm = q.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    q.iter_mut().for_each(|x| *x /= norm);

    let mut basis: Vec<Vec<Complex64>> = vec![q];
    let mut alpha = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..steps {
        kernel.apply_into(&basis[j], &mut w);
        let a: f64 = basis[j].iter().zip(&w).map(|(x, y)| (x.conj() * y).re).sum();
        alpha.push(a);
        // Gram-Schmidt against every previous vector, twice.
        for _ in 0..2 {
            for v in &basis {
                let c: Complex64 = v.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                w.iter_mut().zip(v).for_each(|(y, x)| *y -= c * x);
            }
        }
        let b = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if j + 1 == steps || b < 1e-12 {
            break;
        }
        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }

    let m = alpha.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let evs: DVector<f64> = t.symmetric_eigenvalues();
    let lo = evs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = evs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}
