//! Load an FCIDUMP fixture and print its metadata, term counts and the
//! Hartree-Fock and FCI energies.
//!
//!     cargo run --release --example fcidump_inspect -- crates/core/fixtures/h3o+_r1.00.fcidump

use std::path::PathBuf;

use cvqe::fermion::{enumerate_sector, load_fcidump};
use cvqe::subspace::fci_ground_state;

fn main() -> cvqe::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/h3o+_r1.00.fcidump"));
    let (h, meta) = load_fcidump(&path)?;

    println!("fixture        {}", path.display());
    println!("geometry       {} ({} A)", meta.label(), meta.bond_length);
    println!("spin-orbitals  {}", meta.n_modes);
    println!("electrons      {} alpha + {} beta", meta.n_alpha, meta.n_beta);
    println!("HF occupation  {}", meta.hf_occupation);
    println!("sector size    {}", enumerate_sector(meta.n_spatial(), meta.n_alpha, meta.n_beta).len());
    let one_body = h.terms().iter().filter(|t| t.create().len() == 1).count();
    println!("terms          {} ({} one-body, {} two-body)", h.terms().len(), one_body, h.terms().len() - one_body);
    println!("constant       {:.10} Ha", h.constant());

    let e_hf = h.matrix_element(meta.hf_occupation, meta.hf_occupation);
    let gt = fci_ground_state(&h, &meta)?;
    println!("E_HF           {e_hf:.10} Ha (sidecar {:.10})", meta.hf_energy);
    println!("E_FCI          {:.10} Ha", gt.energy);
    println!("correlation    {:.3e} Ha", gt.energy - e_hf);
    println!("gap            {:.6} Ha", gt.gap);
    Ok(())
}
