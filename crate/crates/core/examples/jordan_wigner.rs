//! Apply an energy cutoff and map the Hamiltonian to Pauli strings.
//! Prints the term count for a few cutoffs and the largest strings.
//!
//!     cargo run --release --example jordan_wigner -- [cutoff_Ha]

use std::path::PathBuf;

use cvqe::fermion::load_fcidump;
use cvqe::qubit_map::{cutoff_filter, jordan_wigner};

fn main() -> cvqe::Result<()> {
    let cutoff: f64 = std::env::args().nth(1).map_or(0.11, |s| s.parse().expect("cutoff in Hartree"));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/h3o+_r1.00.fcidump");
    let (h, _) = load_fcidump(path)?;

    println!("{:>8} {:>16} {:>12}", "eps_Ha", "fermionic terms", "Pauli words");
    for eps in [0.0, 0.01, 0.05, 0.11, 0.2, 0.5] {
        let filtered = cutoff_filter(&h, eps)?;
        let paulis = jordan_wigner(&filtered)?;
        println!("{eps:>8} {:>16} {:>12}", filtered.terms().len(), paulis.non_identity().count());
    }

    let paulis = jordan_wigner(&cutoff_filter(&h, cutoff)?)?;
    println!("\nidentity weight {:.8} Ha", paulis.identity_coefficient());
    println!("largest strings at eps = {cutoff} Ha:");
    for term in paulis.non_identity().take(12) {
        println!("  {:+.8}  {}", term.coefficient, term.word);
    }
    Ok(())
}
