use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::SpinState;
use crate::error::{Error, Result};

/// Couplings of the nearest-neighbour XYZ chain used in the two-peak and
/// heating experiments: (J_x, J_y, J_z).
pub const REFERENCE_COUPLINGS: [f64; 3] = [0.47, -0.37, -0.79];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Coupling {
    /// `H = -h_z Σ_i S_iz`
    Field { h_z: f64 },
    /// `H = -Σ_⟨ij⟩ (J_x S_ix S_jx + J_y S_iy S_jy + J_z S_iz S_jz)` over
    /// nearest-neighbour bonds of a chain.
    Xyz {
        j_x: f64,
        j_y: f64,
        j_z: f64,
        periodic: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    pub n_sites: usize,
    pub coupling: Coupling,
}

impl HamiltonianSpec {
    pub fn field(n_sites: usize, h_z: f64) -> Self {
        Self {
            n_sites,
            coupling: Coupling::Field { h_z },
        }
    }

    pub fn xyz(n_sites: usize, j_x: f64, j_y: f64, j_z: f64, periodic: bool) -> Self {
        Self {
            n_sites,
            coupling: Coupling::Xyz {
                j_x,
                j_y,
                j_z,
                periodic,
            },
        }
    }

    /// Periodic XYZ chain with [`REFERENCE_COUPLINGS`].
    pub fn reference_xyz(n_sites: usize) -> Self {
        let [j_x, j_y, j_z] = REFERENCE_COUPLINGS;
        Self::xyz(n_sites, j_x, j_y, j_z, true)
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.coupling, Coupling::Xyz { periodic: true, .. })
    }

    /// Nearest-neighbour bonds. The wrap bond exists only for periodic chains
    /// with at least three sites.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        match self.coupling {
            Coupling::Field { .. } => Vec::new(),
            Coupling::Xyz { periodic, .. } => {
                let n = self.n_sites;
                let mut bonds: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
                if periodic && n >= 3 {
                    bonds.push((n - 1, 0));
                }
                bonds
            }
        }
    }

    /// Upper bound on the spectral radius from the triangle inequality.
    pub fn norm_bound(&self) -> f64 {
        match self.coupling {
            Coupling::Field { h_z } => h_z.abs() * self.n_sites as f64 / 2.0,
            Coupling::Xyz { j_x, j_y, j_z, .. } => {
                self.bonds().len() as f64 * (j_x.abs() + j_y.abs() + j_z.abs()) / 4.0
            }
        }
    }

    pub(crate) fn kernel(&self) -> Kernel {
        Kernel::new(self)
    }

    /// Calls `f(target, value)` for every nonzero `⟨target|H|index⟩`,
    /// diagonal included. `H` is real symmetric in the product basis.
    pub fn for_each_element(&self, index: usize, f: impl FnMut(usize, f64)) {
        self.kernel().row(index, f)
    }

    /// `H|ψ⟩` without forming the matrix.
    pub fn apply(&self, psi: &SpinState) -> Result<SpinState> {
        psi.check_dim(self.n_sites)?;
        let mut out = SpinState::zeros(self.n_sites);
        self.kernel().apply_into(psi.amplitudes(), out.amplitudes_mut());
        Ok(out)
    }

    pub fn apply_into(&self, psi: &SpinState, out: &mut SpinState) -> Result<()> {
        psi.check_dim(self.n_sites)?;
        out.check_dim(self.n_sites)?;
        self.kernel().apply_into(psi.amplitudes(), out.amplitudes_mut());
        Ok(())
    }

    /// `⟨ψ|H|ψ⟩` for a normalized state.
    pub fn energy_expectation(&self, psi: &SpinState) -> Result<f64> {
        psi.check_dim(self.n_sites)?;
        psi.check_normalized(1e-6)?;
        let h_psi = self.apply(psi)?;
        let e = psi.inner(&h_psi);
        debug_assert!(e.im.abs() < 1e-10 * (1.0 + e.re.abs()), "imaginary energy {e}");
        Ok(e.re)
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.n_sites == 0 {
            return Err(Error::InvalidParameter("n_sites must be at least 1".into()));
        }
        if self.n_sites > 30 {
            return Err(Error::MemoryBudget {
                n_sites: self.n_sites,
                budget_sites: 30,
            });
        }
        Ok(())
    }
}

/// Precomputed bond masks and flip amplitudes.
pub(crate) struct Kernel {
    field: Option<(f64, usize)>,
    bonds: Vec<Bond>,
}

struct Bond {
    mask: usize,
    i: usize,
    j: usize,
    // diagonal -J_z/4 * s_i s_j
    zz: f64,
    // flip amplitude when spins i, j are parallel / antiparallel
    flip_same: f64,
    flip_diff: f64,
}

impl Kernel {
    fn new(spec: &HamiltonianSpec) -> Self {
        match spec.coupling {
            Coupling::Field { h_z } => Self {
                field: Some((h_z, spec.n_sites)),
                bonds: Vec::new(),
            },
            Coupling::Xyz { j_x, j_y, j_z, .. } => Self {
                field: None,
                bonds: spec
                    .bonds()
                    .into_iter()
                    .map(|(i, j)| Bond {
                        mask: (1 << i) | (1 << j),
                        i,
                        j,
                        zz: -j_z / 4.0,
                        flip_same: -(j_x - j_y) / 4.0,
                        flip_diff: -(j_x + j_y) / 4.0,
                    })
                    .collect(),
            },
        }
    }

    #[inline]
    fn row(&self, index: usize, mut f: impl FnMut(usize, f64)) {
        if let Some((h_z, n)) = self.field {
            let downs = index.count_ones() as f64;
            f(index, -h_z * (n as f64 - 2.0 * downs) / 2.0);
            return;
        }
        let mut diag = 0.0;
        for b in &self.bonds {
            let same = ((index >> b.i) & 1) == ((index >> b.j) & 1);
            if same {
                diag += b.zz;
                if b.flip_same != 0.0 {
                    f(index ^ b.mask, b.flip_same);
                }
            } else {
                diag -= b.zz;
                if b.flip_diff != 0.0 {
                    f(index ^ b.mask, b.flip_diff);
                }
            }
        }
        f(index, diag);
    }

    pub(crate) fn apply_into(&self, psi: &[Complex64], out: &mut [Complex64]) {
        // H is real symmetric, so each output row gathers from its own row.
        for (b, o) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            self.row(b, |t, v| acc += psi[t] * v);
            *o = acc;
        }
    }
}
