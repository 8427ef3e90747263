//! Guiding-state preparation by a Trotterized trapezoidal adiabatic schedule.
//!
//! With `K` steps of size `ΔT = T/K` the evolution is
//!
//! ```text
//! U ≈ exp(-i H ΔT/2) · Π_{k=1}^{K-1} exp(-i H (1 - k/K) ΔT) · U_0
//! ```
//!
//! where `U_0` prepares the Hartree–Fock state and the factor for the model
//! Hamiltonian is dropped as a global phase. Each factor is replaced by an
//! ordered first-order product of Pauli exponentials. Time is in atomic units
//! (ħ = 1).

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::statevector::{prepare_reference, Statevector};
use crate::error::{Error, Result};
use crate::fermion::{enumerate_sector, FermionHamiltonian, SystemMetadata};
use crate::linalg::symmetric_eigen;
use crate::qubit_map::{PauliString, PauliSum};
use crate::subspace::assemble_subspace_hamiltonian;

/// Largest sector the dense exact-evolution reference will exponentiate.
pub const EXACT_SECTOR_LIMIT: usize = 4096;

/// Order in which Pauli exponentials are applied within one Trotter factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermOrdering {
    /// Largest `|c_r|` first, lexicographic word on ties.
    #[default]
    MagnitudeDescending,
    /// Lexicographic by word (`I < X < Y < Z`, qubit 0 first).
    Lexicographic,
}

impl TermOrdering {
    pub fn order<'a>(&self, ps: &'a PauliSum) -> Vec<&'a PauliString> {
        let mut terms: Vec<&PauliString> = ps.non_identity().collect();
        if *self == TermOrdering::Lexicographic {
            terms.sort_by(|a, b| a.word.cmp(&b.word));
        }
        terms
    }
}

impl fmt::Display for TermOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermOrdering::MagnitudeDescending => "magnitude-descending",
            TermOrdering::Lexicographic => "lexicographic",
        })
    }
}

impl FromStr for TermOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "magnitude-descending" => Ok(TermOrdering::MagnitudeDescending),
            "lexicographic" => Ok(TermOrdering::Lexicographic),
            _ => Err(Error::Parse(format!("unknown term ordering {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionPlan {
    pub time: f64,
    pub steps: usize,
    pub ordering: TermOrdering,
    /// Cutoff applied upstream; carried for provenance only.
    pub cutoff: f64,
}

impl EvolutionPlan {
    pub fn new(time: f64, steps: usize) -> Result<Self> {
        let plan = Self { time, steps, ordering: TermOrdering::default(), cutoff: 0.0 };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidArgument("Trotter step count must be at least 1".into()));
        }
        if !self.time.is_finite() {
            return Err(Error::InvalidArgument(format!("evolution time {} is not finite", self.time)));
        }
        Ok(())
    }

    /// Weights of the Trotter factors in application order: the interior
    /// factors `(1 - k/K)ΔT` for `k = K-1 … 1`, then `ΔT/2`.
    pub fn factor_weights(&self) -> Vec<f64> {
        let k_total = self.steps as f64;
        let dt = self.time / k_total;
        let mut w: Vec<f64> = (1..self.steps).rev().map(|k| (1.0 - k as f64 / k_total) * dt).collect();
        w.push(dt / 2.0);
        w
    }
}

/// Trotterized guiding state starting from the Hartree–Fock reference.
///
/// The identity word is skipped (global phase). Amplitude that leaks out of
/// the particle-number sector is kept.
pub fn trotter_guiding_state(ps: &PauliSum, meta: &SystemMetadata, plan: &EvolutionPlan) -> Result<Statevector> {
    plan.validate()?;
    if ps.n_qubits() != meta.n_modes {
        return Err(Error::QubitMismatch { expected: meta.n_modes, found: ps.n_qubits() });
    }
    let mut psi = prepare_reference(meta.hf_occupation)?;
    if plan.time == 0.0 {
        return Ok(psi);
    }
    let terms = plan.ordering.order(ps);
    for weight in plan.factor_weights() {
        for t in &terms {
            psi.apply_pauli_exponential(&t.word, t.coefficient * weight)?;
        }
    }
    Ok(psi)
}

/// `exp(-i (H - c_I) T/2) |HF⟩` by dense diagonalization of the
/// particle-number sector, where `c_I` is the identity weight that the
/// Trotter path drops as a global phase.
pub fn exact_guiding_state(h: &FermionHamiltonian, meta: &SystemMetadata, time: f64) -> Result<Statevector> {
    let sector = enumerate_sector(meta.n_spatial(), meta.n_alpha, meta.n_beta);
    if sector.len() > EXACT_SECTOR_LIMIT {
        return Err(Error::SectorTooLarge { dim: sector.len(), limit: EXACT_SECTOR_LIMIT });
    }
    let hf_pos = sector
        .binary_search(&meta.hf_occupation)
        .map_err(|_| Error::InvalidMetadata("Hartree-Fock state is outside its own sector".into()))?;
    let m = assemble_subspace_hamiltonian(h, &sector);
    let eig = symmetric_eigen(&m)?;
    let shift = h.identity_weight();
    let v = &eig.vectors;
    // coefficients of |HF> in the eigenbasis
    let c0: DVector<f64> = v.row(hf_pos).transpose();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << meta.n_modes];
    for (k, &e) in eig.values.iter().enumerate() {
        let phase = Complex64::from_polar(c0[k], -(e - shift) * time / 2.0);
        for (i, s) in sector.iter().enumerate() {
            amps[s.index() as usize] += phase * v[(i, k)];
        }
    }
    Statevector::normalized(amps)
}

/// Evolution time that bounds the adiabatic state deviation by `tol`:
/// `40 / (tol · gap²) · max(v, v² / gap)`.
pub fn adiabatic_time_bound(gap: f64, perturbation_norm: f64, tol: f64) -> Result<f64> {
    if !(gap > 0.0) {
        return Err(Error::InvalidArgument(format!("spectral gap must be positive, got {gap}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if !(perturbation_norm >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "perturbation norm must be non-negative, got {perturbation_norm}"
        )));
    }
    let v = perturbation_norm;
    Ok(40.0 / (tol * gap * gap) * v.max(v * v / gap))
}
