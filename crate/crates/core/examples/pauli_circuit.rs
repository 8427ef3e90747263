//! Emit the rotation circuit for a single Pauli string, print it in the
//! portable text format and check it against the direct exponential.

use cvqe::qubit_map::PauliString;
use cvqe::simulator::{emit_pauli_circuit, pauli_exponential, simulate_circuit, Statevector};
use num_complex::Complex64;

fn main() -> cvqe::Result<()> {
    let term = PauliString::parse("XIIIIIIYYIIIIX", 0.0123)?;
    let weight = 2.0;
    let circuit = emit_pauli_circuit(&term, weight)?;
    print!("{}", circuit.to_text());
    println!("# {} gates, {} CNOTs", circuit.len(), circuit.cnot_count());

    // a spread-out 14-qubit test state
    let amps = (0..1u64 << 14)
        .map(|i| Complex64::from_polar(1.0 + (i % 5) as f64, 0.37 * i as f64))
        .collect();
    let psi = Statevector::normalized(amps)?;
    let via_circuit = simulate_circuit(&circuit, &psi)?;
    let direct = pauli_exponential(&psi, &term.word, term.coefficient * weight)?;
    println!("# fidelity(circuit, direct) = {:.15}", via_circuit.fidelity(&direct)?);
    Ok(())
}
