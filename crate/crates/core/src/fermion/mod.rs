//! Second-quantized Hamiltonians over spin-orbitals.
//!
//! Sign convention: mode 0 is the rightmost operator slot, so moving an
//! operator onto mode `q` picks up `(-1)` per occupied mode below `q`. This is
//! the same parity string the Jordan–Wigner map uses.

mod fcidump;
mod fock;
mod hamiltonian;

pub use fcidump::{
    hartree_fock_state, load_fcidump, parse_fcidump, sidecar_path, spin_orbital_hamiltonian,
    FcidumpHeader, SidecarFile, SpatialIntegrals, SystemMetadata,
};
pub use fock::{enumerate_sector, FockState, MAX_MODES};
pub use hamiltonian::{apply_interaction, FermionHamiltonian, Interaction, ModeTuple, ZERO_THRESHOLD};
