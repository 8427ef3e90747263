//! Prepare the Trotterized guiding state and compare it with exact
//! evolution: energy, weight on the Hartree-Fock state, leakage out of the
//! particle-number sector, and the most probable configurations.
//!
//!     cargo run --release --example guiding_state -- [T] [K]

use std::path::PathBuf;

use cvqe::fermion::load_fcidump;
use cvqe::qubit_map::{cutoff_filter, jordan_wigner};
use cvqe::simulator::{exact_guiding_state, trotter_guiding_state, EvolutionPlan};

fn main() -> cvqe::Result<()> {
    let mut args = std::env::args().skip(1);
    let time: f64 = args.next().map_or(2.0, |s| s.parse().expect("time"));
    let steps: usize = args.next().map_or(1, |s| s.parse().expect("steps"));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/h3o+_r1.00.fcidump");
    let (h, meta) = load_fcidump(path)?;

    let paulis = jordan_wigner(&cutoff_filter(&h, 0.11)?)?;
    let plan = EvolutionPlan::new(time, steps)?;
    let psi = trotter_guiding_state(&paulis, &meta, &plan)?;
    let exact = exact_guiding_state(&h, &meta, time)?;

    println!("T = {time}, K = {steps}, {} Pauli words", paulis.non_identity().count());
    println!("E(guiding)        {:.8} Ha", psi.expectation(&h)?);
    println!("E(HF)             {:.8} Ha", meta.hf_energy);
    println!("|<HF|psi>|^2      {:.6}", psi.amplitude(meta.hf_occupation).norm_sqr());
    println!("sector weight     {:.6}", psi.sector_weight(meta.n_alpha as u32, meta.n_beta as u32));
    println!("|psi - psi_exact| {:.3e} (exact evolution of the full Hamiltonian)", psi.distance(&exact)?);

    let mut probs: Vec<(usize, f64)> = psi.probabilities().into_iter().enumerate().collect();
    probs.sort_by(|a, b| b.1.total_cmp(&a.1));
    println!("top configurations:");
    for (i, p) in probs.into_iter().take(8) {
        println!("  {i:014b}  {p:.5}");
    }
    Ok(())
}
