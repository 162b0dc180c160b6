use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::analytics::{CutSource, CuttingFunction};
use crate::error::{Error, Result};
use crate::spectral::EnergyGrid;
use crate::spin::{HamiltonianSpec, Spectrum, MAX_SITES_WITH_VECTORS};

/// Site and orientation `(site, θ, φ)` of one projector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalAxis {
    pub site: usize,
    pub theta: f64,
    pub phi: f64,
}

/// Bin-averaged `[A†A]_diag(E)` for `A = P_b e^{-iH·delay} P_a`, split as
///
/// `A†A = ¼ + (½S_a + ¼S_b(τ)) + ½{S_a, S_b(τ)} + S_a S_b(τ) S_a`
///
/// with `S = P - ½` and `S_b(τ) = e^{iHτ} S_b e^{-iHτ}`.
#[derive(Debug, Clone)]
pub struct PairCut {
    pub cut: CuttingFunction,
    /// `[½S_a + ¼S_b(τ)]_diag` per bin.
    pub single_spin: Vec<f64>,
    /// `[½{S_a, S_b(τ)}]_diag` per bin.
    pub two_spin: Vec<f64>,
    /// `[S_a S_b(τ) S_a]_diag` per bin.
    pub three_spin: Vec<f64>,
    /// Eigenstates per bin; bins without any report zeros.
    pub counts: Vec<usize>,
    /// `⟨E_k|A†A|E_k⟩` for every eigenstate.
    pub per_level: Vec<f64>,
}

impl PairCut {
    pub fn values(&self) -> &[f64] {
        match &self.cut {
            CuttingFunction::Tabulated { values, .. } => values,
            CuttingFunction::FieldAnalytic { .. } => unreachable!("pair cuts are tabulated"),
        }
    }
}

/// Evaluates the pair-measurement cutting function in the eigenbasis of
/// `spectrum`, which must belong to `spec` and carry eigenvectors.
pub fn pair_cutting_function(
    spec: &HamiltonianSpec,
    a: LocalAxis,
    b: LocalAxis,
    delay: f64,
    spectrum: &Spectrum,
    grid: EnergyGrid,
) -> Result<PairCut> {
    let n = spec.n_sites;
    if n > MAX_SITES_WITH_VECTORS {
        return Err(Error::TooLarge {
            n_sites: n,
            cap: MAX_SITES_WITH_VECTORS,
        });
    }
    for site in [a.site, b.site] {
        if site >= n {
            return Err(Error::SiteOutOfRange { site, n_sites: n });
        }
    }
    if !(delay >= 0.0) {
        return Err(Error::InvalidParameter(format!("delay must be nonnegative, got {delay}")));
    }
    let v = spectrum.vectors()?;
    let dim = spec.dim();
    if v.nrows() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: v.nrows(),
        });
    }
    let vc: DMatrix<Complex64> = v.map(|x| Complex64::new(x, 0.0));
    let projected = |axis: LocalAxis| {
        let mut m = vc.clone();
        project_columns(&mut m, axis);
        vc.adjoint() * m
    };
    let ma = projected(a);
    let mb = projected(b);
    let phase: Vec<Complex64> = spectrum
        .eigenvalues
        .iter()
        .map(|e| Complex64::from_polar(1.0, -e * delay))
        .collect();
    let half = Complex64::new(0.5, 0.0);
    let mut x = ma.clone();
    let mut y = DMatrix::from_fn(dim, dim, |j, k| phase[j].conj() * mb[(j, k)] * phase[k]);
    for k in 0..dim {
        x[(k, k)] -= half;
        y[(k, k)] -= half;
    }
    let mut dma = ma;
    for (l, mut row) in dma.row_iter_mut().enumerate() {
        row *= phase[l];
    }
    let amp = &mb * dma;
    let xy = &x * &y;
    let xyx = &xy * &x;

    let per_level: Vec<f64> = amp.column_iter().map(|c| c.norm_squared()).collect();
    let single: Vec<f64> = (0..dim).map(|k| 0.5 * x[(k, k)].re + 0.25 * y[(k, k)].re).collect();
    let two: Vec<f64> = (0..dim).map(|k| xy[(k, k)].re).collect();
    let three: Vec<f64> = (0..dim).map(|k| xyx[(k, k)].re).collect();

    let mut counts = vec![0usize; grid.n_bins];
    let mut sums = vec![[0.0f64; 4]; grid.n_bins];
    for (k, e) in spectrum.eigenvalues.iter().enumerate() {
        let bin = grid.clamped_bin(*e);
        counts[bin] += 1;
        let s = &mut sums[bin];
        s[0] += per_level[k];
        s[1] += single[k];
        s[2] += two[k];
        s[3] += three[k];
    }
    let average = |i: usize| -> Vec<f64> {
        sums.iter()
            .zip(&counts)
            .map(|(s, c)| if *c == 0 { 0.0 } else { s[i] / *c as f64 })
            .collect()
    };
    Ok(PairCut {
        cut: CuttingFunction::Tabulated {
            grid,
            values: average(0),
            source: CutSource::PairExact,
        },
        single_spin: average(1),
        two_spin: average(2),
        three_spin: average(3),
        counts,
        per_level,
    })
}

/// Applies `|θφ⟩⟨θφ|` on `axis.site` to every column of a product-basis matrix.
fn project_columns(m: &mut DMatrix<Complex64>, axis: LocalAxis) {
    let up = (axis.theta / 2.0).cos();
    let down = Complex64::from_polar((axis.theta / 2.0).sin(), axis.phi);
    let bit = 1usize << axis.site;
    let rows = m.nrows();
    for col in m.as_mut_slice().chunks_mut(rows) {
        for i in (0..rows).filter(|i| i & bit == 0) {
            let j = i | bit;
            let overlap = up * col[i] + down.conj() * col[j];
            col[i] = overlap * up;
            col[j] = overlap * down;
        }
    }
}
