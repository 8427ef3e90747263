//! Sweep all sixteen bond lengths at the reference parameters and write
//! the bond-length tables (fig3/fig5/fig6 CSV) to an output directory.
//!
//!     cargo run --release --example bond_sweep -- [out_dir] [n_seeds]

use std::path::PathBuf;

use cvqe::pipeline::{run_experiment, RunConfig, Sweep};

fn main() -> cvqe::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out/bond".into()));
    let n_seeds: u64 = args.next().map_or(1, |s| s.parse().expect("seed count"));
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");

    let mut cfg = RunConfig::new(
        (0..16)
            .map(|i| fixtures.join(format!("h3o+_r{:.2}.fcidump", 0.5 + 0.1 * i as f64)))
            .collect(),
    );
    cfg.seeds = (0..n_seeds).collect();
    cfg.sweep = Some(Sweep::Bond);
    cfg.out_dir = Some(out.clone());
    let records = run_experiment(&cfg)?;

    println!("{:>6} {:>4} {:>14} {:>14} {:>14} {:>10} {:>6}", "r_A", "rep", "E_guiding", "E*", "E_FCI", "dE*", "d");
    for r in &records {
        println!(
            "{:>6.2} {:>4} {:>14.8} {:>14.8} {:>14.8} {:>10.2e} {:>6}",
            r.bond_length, r.replicate, r.e_guiding, r.e_opt, r.e_fci, r.delta_e, r.dim
        );
    }
    println!("tables written to {}", out.display());
    Ok(())
}
