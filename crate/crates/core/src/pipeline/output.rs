//! CSV tables written by a run.
//!
//! | file         | columns                                   |
//! |--------------|-------------------------------------------|
//! | records.csv  | every [`RunRecord`] field except wall time |
//! | timings.csv  | geometry, time, cutoff, replicate, wall_s |
//! | fig3.csv     | bond_A, E_guiding_Ha, E_opt_Ha, E_fci_Ha  |
//! | fig4.csv     | T_au, dE_Ha, dPsi_sq                      |
//! | fig5.csv     | bond_A, eps_Ha, dE_Ha                     |
//! | fig6.csv     | bond_A, eps_Ha, dim                       |

use std::fs;
use std::path::Path;

use super::{RunRecord, Sweep};
use crate::error::{Error, Result};

pub const RECORDS_FILE: &str = "records.csv";

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

/// Reads `records.csv` from a previous run; missing file means no records.
pub fn read_records(dir: &Path) -> Result<Vec<RunRecord>> {
    let path = dir.join(RECORDS_FILE);
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut rdr = csv::Reader::from_path(&path).map_err(|e| csv_err(&path, e))?;
    rdr.deserialize().map(|r| r.map_err(|e| csv_err(&path, e))).collect()
}

fn write_table(path: &Path, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes all tables for `sweep` (all figure tables when `None`).
pub fn write_outputs(dir: &Path, records: &[RunRecord], sweep: Option<Sweep>) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let path = dir.join(RECORDS_FILE);
    let mut w = csv::Writer::from_path(&path).map_err(|e| csv_err(&path, e))?;
    for r in records {
        w.serialize(r).map_err(|e| csv_err(&path, e))?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;

    write_table(
        &dir.join("timings.csv"),
        &["geometry", "time", "cutoff", "replicate", "wall_s"],
        records.iter().map(|r| {
            vec![r.geometry.clone(), r.time.to_string(), r.cutoff.to_string(), r.replicate.to_string(), format!("{:.6}", r.wall_time_s)]
        }),
    )?;

    let want = |s: Sweep| sweep.is_none() || sweep == Some(s);
    if want(Sweep::Bond) {
        write_table(
            &dir.join("fig3.csv"),
            &["bond_A", "E_guiding_Ha", "E_opt_Ha", "E_fci_Ha"],
            records.iter().map(|r| {
                vec![r.bond_length.to_string(), r.e_guiding.to_string(), r.e_opt.to_string(), r.e_fci.to_string()]
            }),
        )?;
    }
    if want(Sweep::Time) {
        write_table(
            &dir.join("fig4.csv"),
            &["T_au", "dE_Ha", "dPsi_sq"],
            records.iter().map(|r| vec![r.time.to_string(), r.delta_e.to_string(), r.delta_psi_sq.to_string()]),
        )?;
    }
    if want(Sweep::Bond) || want(Sweep::Cutoff) {
        write_table(
            &dir.join("fig5.csv"),
            &["bond_A", "eps_Ha", "dE_Ha"],
            records.iter().map(|r| vec![r.bond_length.to_string(), r.cutoff.to_string(), r.delta_e.to_string()]),
        )?;
        write_table(
            &dir.join("fig6.csv"),
            &["bond_A", "eps_Ha", "dim"],
            records.iter().map(|r| vec![r.bond_length.to_string(), r.cutoff.to_string(), r.dim.to_string()]),
        )?;
    }
    Ok(())
}
