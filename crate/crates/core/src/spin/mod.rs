//! Spin-1/2 chain Hamiltonians, states and exact spectra.

mod canonical;
mod hamiltonian;
mod spectrum;
mod state;

pub use canonical::canonical_width;
pub use hamiltonian::{Coupling, HamiltonianSpec, REFERENCE_COUPLINGS};
pub use spectrum::{
    exact_spectrum, extremal_energies, Spectrum, MAX_SITES_FIELD, MAX_SITES_OPEN_XYZ,
    MAX_SITES_PERIODIC_XYZ, MAX_SITES_WITH_VECTORS,
};
pub use state::SpinState;

pub(crate) use hamiltonian::Kernel;
