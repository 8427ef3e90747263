//! Experiment orchestration: load → cutoff → Jordan–Wigner → guiding state →
//! sample → expand → diagonalize → score against FCI, over a parameter grid.

mod config;
mod cost;
mod output;

use std::collections::HashSet;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{RunConfig, Sweep};
pub use cost::{measurement_cost, MeasurementCost};
pub use output::{read_records, write_outputs, RECORDS_FILE};

use crate::error::Result;
use crate::fermion::{load_fcidump, FermionHamiltonian, SystemMetadata};
use crate::qubit_map::{cutoff_filter, jordan_wigner};
use crate::sampler::{derive_seed, sample, sector_filter, Provenance};
use crate::simulator::{trotter_guiding_state, EvolutionPlan, TermOrdering};
use crate::subspace::{expand_basis, fci_ground_state, optimize, state_deviation, GroundTruth};

/// One grid cell's outcome. Energies in Hartree, time in atomic units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub geometry: String,
    pub bond_length: f64,
    pub time: f64,
    pub steps: usize,
    pub cutoff: f64,
    pub shots: u64,
    pub replicate: usize,
    /// Seed actually used by the sampler (derived from the master seed).
    pub seed: u64,
    pub distinct_samples: usize,
    pub dim: usize,
    pub e_guiding: f64,
    pub e_opt: f64,
    pub e_fci: f64,
    pub e_hf: f64,
    /// `E* − E_g`
    pub delta_e: f64,
    /// `(δΨ*)²`
    pub delta_psi_sq: f64,
    pub hf_in_basis: bool,
    pub pauli_terms: usize,
    #[serde(skip)]
    pub wall_time_s: f64,
}

impl RunRecord {
    fn key(&self) -> CellKey {
        CellKey::new(&self.geometry, self.time, self.cutoff, self.replicate)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CellKey(String);

impl CellKey {
    fn new(geometry: &str, time: f64, cutoff: f64, replicate: usize) -> Self {
        CellKey(format!("{geometry}|{time}|{cutoff}|{replicate}"))
    }
}

/// A loaded fixture with its FCI reference.
pub struct System {
    pub path: PathBuf,
    pub hamiltonian: FermionHamiltonian,
    pub meta: SystemMetadata,
    pub ground: GroundTruth,
}

impl System {
    pub fn load(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let (hamiltonian, meta) = load_fcidump(&path)?;
        let ground = fci_ground_state(&hamiltonian, &meta)?;
        Ok(Self { path, hamiltonian, meta, ground })
    }
}

/// Parameters of a single guided-sampling run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellParams {
    pub time: f64,
    pub steps: usize,
    pub cutoff: f64,
    pub shots: u64,
    pub seed: u64,
    pub sector_filter: bool,
    pub ordering: TermOrdering,
}

impl CellParams {
    /// K = 1, T = 2, ε = 0.11 Ha, 200 shots.
    pub fn reference(seed: u64) -> Self {
        Self {
            time: 2.0,
            steps: 1,
            cutoff: 0.11,
            shots: 200,
            seed,
            sector_filter: false,
            ordering: TermOrdering::default(),
        }
    }
}

/// Runs the full guided-sampling chain for one parameter set.
pub fn run_cell(system: &System, p: &CellParams, replicate: usize) -> Result<RunRecord> {
    let start = Instant::now();
    let h = &system.hamiltonian;
    let meta = &system.meta;
    let filtered = cutoff_filter(h, p.cutoff)?;
    let paulis = jordan_wigner(&filtered)?;
    let plan = EvolutionPlan { time: p.time, steps: p.steps, ordering: p.ordering, cutoff: p.cutoff };
    let guiding = trotter_guiding_state(&paulis, meta, &plan)?;
    let e_guiding = guiding.expectation(h)?;

    let provenance = Provenance { time: p.time, steps: p.steps, cutoff: p.cutoff, geometry: meta.label() };
    let mut shots = sample(&guiding, p.shots, p.seed)?.with_provenance(provenance);
    if p.sector_filter {
        shots = sector_filter(&shots, meta.n_alpha as u32, meta.n_beta as u32)?;
    }
    let basis = expand_basis(h, &shots)?;
    let hf_in_basis = basis.contains(meta.hf_occupation);
    let solution = optimize(h, basis)?;
    let dpsi = state_deviation(&solution.state(), &system.ground)?;

    Ok(RunRecord {
        geometry: meta.label(),
        bond_length: meta.bond_length,
        time: p.time,
        steps: p.steps,
        cutoff: p.cutoff,
        shots: p.shots,
        replicate,
        seed: p.seed,
        distinct_samples: shots.len(),
        dim: solution.dim(),
        e_guiding,
        e_opt: solution.energy(),
        e_fci: system.ground.energy,
        e_hf: h.matrix_element(meta.hf_occupation, meta.hf_occupation),
        delta_e: solution.energy() - system.ground.energy,
        delta_psi_sq: dpsi * dpsi,
        hf_in_basis,
        pauli_terms: paulis.non_identity().count(),
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

struct Cell {
    system: usize,
    replicate: usize,
    params: CellParams,
}

/// Runs every cell of the grid (skipping cells already present in the
/// output directory) and writes the CSV tables when `out_dir` is set.
///
/// Records come back in grid order: fixture, cutoff, time, replicate.
pub fn run_experiment(cfg: &RunConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let previous = match &cfg.out_dir {
        Some(dir) => read_records(dir)?,
        None => Vec::new(),
    };
    let done: HashSet<CellKey> = previous.iter().map(RunRecord::key).collect();

    let systems: Vec<System> = cfg.fixtures.iter().map(System::load).collect::<Result<_>>()?;

    let mut cells = Vec::new();
    for (gi, sys) in systems.iter().enumerate() {
        for (ei, &cutoff) in cfg.cutoffs.iter().enumerate() {
            for (ti, &time) in cfg.times.iter().enumerate() {
                for (ri, &master) in cfg.seeds.iter().enumerate() {
                    if done.contains(&CellKey::new(&sys.meta.label(), time, cutoff, ri)) {
                        continue;
                    }
                    let seed = derive_seed(master, &[gi as u64, ti as u64, ei as u64, ri as u64]);
                    cells.push(Cell {
                        system: gi,
                        replicate: ri,
                        params: CellParams {
                            time,
                            steps: cfg.steps,
                            cutoff,
                            shots: cfg.shots,
                            seed,
                            sector_filter: cfg.sector_filter,
                            ordering: cfg.ordering,
                        },
                    });
                }
            }
        }
    }

    let compute = || -> Result<Vec<RunRecord>> {
        cells.par_iter().map(|c| run_cell(&systems[c.system], &c.params, c.replicate)).collect()
    };
    let fresh = match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| crate::Error::Config(e.to_string()))?
            .install(compute)?,
        None => compute()?,
    };

    // merge previous and fresh records back into grid order
    let order = |r: &RunRecord| -> (usize, usize, usize, usize) {
        let g = systems.iter().position(|s| s.meta.label() == r.geometry).unwrap_or(usize::MAX);
        let e = cfg.cutoffs.iter().position(|&x| x == r.cutoff).unwrap_or(usize::MAX);
        let t = cfg.times.iter().position(|&x| x == r.time).unwrap_or(usize::MAX);
        (g, e, t, r.replicate)
    };
    let mut records: Vec<RunRecord> = previous.into_iter().chain(fresh).collect();
    records.sort_by_key(|r| order(r));

    if let Some(dir) = &cfg.out_dir {
        write_outputs(dir, &records, cfg.sweep)?;
    }
    Ok(records)
}
