//! Statevector register, gates, Pauli-rotation circuits and guiding-state
//! preparation.

mod circuit;
mod evolution;
mod statevector;

pub use circuit::{emit_pauli_circuit, simulate_circuit, Circuit, Gate};
pub use evolution::{
    adiabatic_time_bound, exact_guiding_state, trotter_guiding_state, EvolutionPlan, TermOrdering,
    EXACT_SECTOR_LIMIT,
};
pub use statevector::{pauli_exponential, prepare_reference, Statevector, NORM_TOL};
