//! Guided sampling ansatz for variational quantum eigensolvers, run on a
//! statevector simulator.
//!
//! The workflow prepares a parameter-free guiding state on a simulated
//! register (a Trotterized adiabatic evolution from the Hartree–Fock state),
//! samples it in the computational basis, grows the sampled configurations
//! into the Fock subspace the Hamiltonian connects them to, and diagonalizes
//! the Hamiltonian there:
//!
//! ```text
//! load_fcidump ─► cutoff_filter ─► jordan_wigner ─► trotter_guiding_state
//!      │                                                   │
//!      │                                                sample
//!      ▼                                                   ▼
//! fci_ground_state ◄── score ── optimize ◄── expand_basis ◄┘
//! ```
//!
//! Modules:
//!
//! - [`fermion`]: Fock states, second-quantized Hamiltonians, FCIDUMP input
//! - [`qubit_map`]: energy cutoff and the Jordan–Wigner map to Pauli sums
//! - [`simulator`]: statevector, gates, Pauli-rotation circuits, guiding states
//! - [`sampler`]: seeded shot sampling
//! - [`subspace`]: basis expansion, diagonalization, FCI reference, deviations
//! - [`pipeline`]: parameter sweeps, CSV tables, measurement-cost report
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability.

pub mod error;
pub mod fermion;
mod linalg;
pub mod pipeline;
pub mod qubit_map;
pub mod sampler;
pub mod simulator;
pub mod subspace;

pub use error::{Error, Result};
pub use linalg::{lanczos_lowest, symmetric_eigen, Eigen, SparseSymmetric};
