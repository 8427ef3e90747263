//! The whole chain for one geometry, step by step: guiding state, 200
//! shots, Fock-subspace expansion, diagonalization and comparison with FCI.
//!
//!     cargo run --release --example minimal_gsa -- [bond_length_A] [seed]

use std::path::PathBuf;

use cvqe::fermion::load_fcidump;
use cvqe::qubit_map::{cutoff_filter, jordan_wigner};
use cvqe::sampler::sample;
use cvqe::simulator::{trotter_guiding_state, EvolutionPlan};
use cvqe::subspace::{energy_deviation, expand_basis, fci_ground_state, optimize};

fn main() -> cvqe::Result<()> {
    let mut args = std::env::args().skip(1);
    let r: f64 = args.next().map_or(1.0, |s| s.parse().expect("bond length"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("fixtures/h3o+_r{r:.2}.fcidump"));
    let (h, meta) = load_fcidump(path)?;

    let paulis = jordan_wigner(&cutoff_filter(&h, 0.11)?)?;
    let psi = trotter_guiding_state(&paulis, &meta, &EvolutionPlan::new(2.0, 1)?)?;
    let shots = sample(&psi, 200, seed)?;
    println!("sampled {} distinct configurations from {} shots", shots.len(), shots.shots());
    for (state, count) in shots.sorted_entries().into_iter().take(5) {
        println!("  {state}  x{count}");
    }

    let basis = expand_basis(&h, &shots)?;
    println!("expanded subspace: d = {}", basis.dim());
    let solution = optimize(&h, basis)?;
    let gt = fci_ground_state(&h, &meta)?;
    let dev = energy_deviation(&solution.state(), &gt, &h)?;

    println!("E_guiding {:.8} Ha", psi.expectation(&h)?);
    println!("E*        {:.8} Ha", solution.energy());
    println!("E_FCI     {:.8} Ha (sector of {})", gt.energy, gt.sector_dim);
    println!("dE*       {:.3e} Ha", solution.energy() - gt.energy);
    println!("dPsi*^2   {:.3e}", dev.delta_psi_sq);
    println!("(E_d - E_g) dPsi^2 = {:.3e} Ha", dev.delta_e);
    Ok(())
}
