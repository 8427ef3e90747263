//! Sweep the evolution time at r = 1.0 A and print the energy error next
//! to the squared state deviation (the fig4 table).
//!
//!     cargo run --release --example time_sweep -- [out_dir]

use std::path::PathBuf;

use cvqe::pipeline::{run_experiment, RunConfig, Sweep};

fn main() -> cvqe::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out/time".into()));
    let fixture = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/h3o+_r1.00.fcidump");

    let mut cfg = RunConfig::new(vec![fixture]);
    cfg.times = vec![0.0, 0.05, 0.1, 0.2, 0.4, 0.7, 1.0, 1.5, 2.0, 3.0, 4.0];
    cfg.sweep = Some(Sweep::Time);
    cfg.out_dir = Some(out.clone());
    let records = run_experiment(&cfg)?;

    println!("{:>6} {:>11} {:>11} {:>6}", "T_au", "dE_Ha", "dPsi_sq", "d");
    for r in &records {
        println!("{:>6} {:>11.3e} {:>11.3e} {:>6}", r.time, r.delta_e, r.delta_psi_sq, r.dim);
    }
    println!("tables written to {}", out.display());
    Ok(())
}
