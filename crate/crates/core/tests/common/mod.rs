//! Dense reference implementations built from Kronecker products, used as
//! independent oracles for the matrix-free code.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;
use stab::spin::{Coupling, HamiltonianSpec, SpinState};

pub type CMat = DMatrix<C>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Spin-½ operators `S = σ/2` in the basis (↑, ↓).
pub fn sx() -> CMat {
    CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0)])
}
pub fn sy() -> CMat {
    CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 0.0)])
}
pub fn sz() -> CMat {
    CMat::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)])
}

/// `|θφ⟩⟨θφ|` with `|θφ⟩ = cos(θ/2)|↑⟩ + e^{iφ} sin(θ/2)|↓⟩`.
pub fn projector(theta: f64, phi: f64) -> CMat {
    let v = [c((theta / 2.0).cos(), 0.0), C::from_polar((theta / 2.0).sin(), phi)];
    CMat::from_fn(2, 2, |i, j| v[i] * v[j].conj())
}

/// `op` on `site` of an `n`-site chain. Site `i` is bit `i` of the basis
/// index, so it is the `i`-th factor counted from the right.
pub fn embed(op: &CMat, site: usize, n: usize) -> CMat {
    let mut out = CMat::identity(1, 1);
    for s in (0..n).rev() {
        let factor = if s == site { op.clone() } else { CMat::identity(2, 2) };
        out = out.kronecker(&factor);
    }
    out
}

pub fn dense_hamiltonian(spec: &HamiltonianSpec) -> CMat {
    let n = spec.n_sites;
    let dim = 1 << n;
    let mut h = CMat::zeros(dim, dim);
    match spec.coupling {
        Coupling::Field { h_z } => {
            for i in 0..n {
                h -= embed(&sz(), i, n) * c(h_z, 0.0);
            }
        }
        Coupling::Xyz { j_x, j_y, j_z, periodic } => {
            let mut bonds: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            if periodic && n >= 3 {
                bonds.push((n - 1, 0));
            }
            for (a, b) in bonds {
                for (j, op) in [(j_x, sx()), (j_y, sy()), (j_z, sz())] {
                    h -= embed(&op, a, n) * embed(&op, b, n) * c(j, 0.0);
                }
            }
        }
    }
    h
}

pub fn to_vec(psi: &SpinState) -> DVector<C> {
    DVector::from_column_slice(psi.amplitudes())
}

pub fn from_vec(n: usize, v: &DVector<C>) -> SpinState {
    SpinState::from_amplitudes(n, v.iter().copied().collect()).unwrap()
}

/// `e^{-iHt}` by scaling and squaring a 20-term Taylor series.
pub fn dense_propagator(h: &CMat, t: f64) -> CMat {
    let norm = h.iter().map(|x| x.norm()).fold(0.0, f64::max) * h.nrows() as f64;
    let squarings = ((norm * t.abs()).max(1.0).log2().ceil() as i32 + 2).max(0);
    let scaled = h * c(0.0, -t / 2f64.powi(squarings));
    let dim = h.nrows();
    let mut sum = CMat::identity(dim, dim);
    let mut term = CMat::identity(dim, dim);
    for k in 1..=20 {
        term = &term * &scaled / c(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Eigenvalues and eigenvectors of a dense Hermitian matrix.
pub fn dense_eigen(h: &CMat) -> (Vec<f64>, CMat) {
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..h.nrows()).collect();
    order.sort_by(|a, b| eig.eigenvalues[*a].total_cmp(&eig.eigenvalues[*b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(h.nrows(), h.nrows(), |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}
