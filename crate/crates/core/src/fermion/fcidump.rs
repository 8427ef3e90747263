//! FCIDUMP ingestion (Molpro convention) with a TOML metadata sidecar.
//!
//! Integrals are read over spatial orbitals in chemist notation `(ij|kl)`
//! with 1-based indices and expanded onto spin-orbitals blocked by spin:
//! modes `0..M` are α, modes `M..2M` are β.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::fock::FockState;
use super::hamiltonian::{FermionHamiltonian, Interaction};
use crate::error::{Error, Result};

/// Integral values that disagree by more than this across a symmetry orbit
/// make the input non-hermitian.
const SYMMETRY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FcidumpHeader {
    pub norb: usize,
    pub nelec: usize,
    pub ms2: i64,
}

/// Raw spatial-orbital integrals with full 8-fold symmetry applied.
#[derive(Clone, Debug)]
pub struct SpatialIntegrals {
    pub header: FcidumpHeader,
    pub constant: f64,
    /// `one_body[p * norb + q]`
    pub one_body: Vec<f64>,
    /// `two_body[((p * n + q) * n + r) * n + s]` = `(pq|rs)`
    pub two_body: Vec<f64>,
}

impl SpatialIntegrals {
    pub fn h1(&self, p: usize, q: usize) -> f64 {
        self.one_body[p * self.header.norb + q]
    }

    pub fn eri(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.header.norb;
        self.two_body[((p * n + q) * n + r) * n + s]
    }
}

/// Sidecar metadata stored next to each FCIDUMP as `<stem>.meta.toml`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SidecarFile {
    pub n_spatial_orbitals: usize,
    pub n_alpha: usize,
    pub n_beta: usize,
    pub hf_energy_ha: f64,
    pub orbital_energies_ha: Vec<f64>,
    pub hf_occupation_bits: String,
    pub bond_length_angstrom: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fci_energy_ha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scf_hf_energy_ha: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemMetadata {
    pub n_modes: usize,
    pub n_alpha: usize,
    pub n_beta: usize,
    pub hf_occupation: FockState,
    /// Total Hartree–Fock energy including the constant.
    pub hf_energy: f64,
    pub orbital_energies: Vec<f64>,
    pub bond_length: f64,
    /// Reference FCI energy written by the fixture generator, when present.
    pub reference_fci_energy: Option<f64>,
}

impl SystemMetadata {
    pub fn n_spatial(&self) -> usize {
        self.n_modes / 2
    }

    /// Short label for the geometry, e.g. `r1.00`.
    pub fn label(&self) -> String {
        format!("r{:.2}", self.bond_length)
    }

    pub fn from_sidecar(side: &SidecarFile) -> Result<Self> {
        let n_modes = 2 * side.n_spatial_orbitals;
        let hf = FockState::from_bitstring(&side.hf_occupation_bits)?;
        if hf.n_modes() != n_modes {
            return Err(Error::InvalidMetadata(format!(
                "occupation has {} modes, expected {n_modes}",
                hf.n_modes()
            )));
        }
        if hf.electron_count() as usize != side.n_alpha + side.n_beta {
            return Err(Error::InvalidMetadata(format!(
                "occupation holds {} electrons, expected {}",
                hf.electron_count(),
                side.n_alpha + side.n_beta
            )));
        }
        Ok(Self {
            n_modes,
            n_alpha: side.n_alpha,
            n_beta: side.n_beta,
            hf_occupation: hf,
            hf_energy: side.hf_energy_ha,
            orbital_energies: side.orbital_energies_ha.clone(),
            bond_length: side.bond_length_angstrom,
            reference_fci_energy: side.fci_energy_ha,
        })
    }
}

pub fn hartree_fock_state(meta: &SystemMetadata) -> FockState {
    meta.hf_occupation
}

/// Location of the sidecar for a given FCIDUMP path.
pub fn sidecar_path(fcidump: &Path) -> PathBuf {
    let stem = fcidump.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    fcidump.with_file_name(format!("{stem}.meta.toml"))
}

/// Loads an FCIDUMP and its sidecar into a spin-orbital Hamiltonian.
pub fn load_fcidump(path: impl AsRef<Path>) -> Result<(FermionHamiltonian, SystemMetadata)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let integrals = parse_fcidump(&text)?;
    let side = sidecar_path(path);
    if !side.exists() {
        return Err(Error::MissingSidecar(side));
    }
    let side_text = fs::read_to_string(&side).map_err(|e| Error::io(&side, e))?;
    let sidecar: SidecarFile =
        toml::from_str(&side_text).map_err(|e| Error::InvalidMetadata(e.to_string()))?;
    let meta = SystemMetadata::from_sidecar(&sidecar)?;
    let h = spin_orbital_hamiltonian(&integrals)?;
    if meta.n_modes != h.n_modes() {
        return Err(Error::InvalidMetadata(format!(
            "sidecar describes {} modes, FCIDUMP {}",
            meta.n_modes,
            h.n_modes()
        )));
    }
    if meta.n_alpha + meta.n_beta != integrals.header.nelec {
        return Err(Error::InvalidMetadata(format!(
            "sidecar electron count {} disagrees with NELEC {}",
            meta.n_alpha + meta.n_beta,
            integrals.header.nelec
        )));
    }
    Ok((h, meta))
}

fn parse_header(header: &str) -> Result<FcidumpHeader> {
    let mut norb = None;
    let mut nelec = None;
    let mut ms2 = None;
    // ORBSYM lists values without keys; only KEY=value pairs matter here
    for field in header.split(',') {
        let Some((key, value)) = field.split_once('=') else {
            continue;
        };
        let key = key.trim().trim_start_matches("&FCI").trim().to_ascii_uppercase();
        let value = value.trim();
        let parse = |v: &str| {
            v.parse::<i64>()
                .map_err(|_| Error::MalformedHeader(format!("bad value {v:?} for {key}")))
        };
        match key.as_str() {
            "NORB" => norb = Some(parse(value)?),
            "NELEC" => nelec = Some(parse(value)?),
            "MS2" => ms2 = Some(parse(value)?),
            _ => {}
        }
    }
    let norb = norb.ok_or_else(|| Error::MalformedHeader("missing NORB".into()))?;
    let nelec = nelec.ok_or_else(|| Error::MalformedHeader("missing NELEC".into()))?;
    let ms2 = ms2.ok_or_else(|| Error::MalformedHeader("missing MS2".into()))?;
    if norb < 0 || nelec < 0 || 2 * norb > super::fock::MAX_MODES as i64 {
        return Err(Error::MalformedHeader(format!("unsupported NORB={norb}, NELEC={nelec}")));
    }
    if nelec > 2 * norb {
        return Err(Error::MalformedHeader(format!("NELEC={nelec} exceeds 2*NORB")));
    }
    Ok(FcidumpHeader { norb: norb as usize, nelec: nelec as usize, ms2 })
}

fn set_symmetric(slot: &mut f64, value: f64, line: usize) -> Result<()> {
    if slot.is_nan() || (*slot - value).abs() <= SYMMETRY_TOL * (1.0 + value.abs()) {
        *slot = value;
        Ok(())
    } else {
        Err(Error::NonHermitian(format!(
            "line {line}: value {value:e} conflicts with symmetric partner {:e}",
            *slot
        )))
    }
}

/// Parses FCIDUMP text into spatial integrals.
pub fn parse_fcidump(text: &str) -> Result<SpatialIntegrals> {
    let mut lines = text.lines().enumerate();
    let mut header = String::new();
    let mut closed = false;
    for (_, line) in lines.by_ref() {
        let t = line.trim();
        if t.starts_with("&END") || t == "/" {
            closed = true;
            break;
        }
        header.push_str(t);
        header.push(',');
        if t.ends_with("&END") || t.ends_with('/') {
            closed = true;
            break;
        }
    }
    if !closed || !header.trim_start().to_ascii_uppercase().starts_with("&FCI") {
        return Err(Error::MalformedHeader("expected &FCI ... &END block".into()));
    }
    let header = parse_header(&header.replace("&END", ""))?;
    let n = header.norb;

    // NaN marks "not yet seen" so symmetric duplicates can be checked
    let mut one_body = vec![f64::NAN; n * n];
    let mut two_body = vec![f64::NAN; n * n * n * n];
    let mut constant = 0.0;

    for (lineno, line) in lines {
        let lineno = lineno + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::MalformedLine {
                line: lineno,
                reason: format!("expected 5 fields, found {}", fields.len()),
            });
        }
        let value: f64 = fields[0]
            .replace(['D', 'd'], "e")
            .parse()
            .map_err(|_| Error::MalformedLine { line: lineno, reason: format!("bad value {:?}", fields[0]) })?;
        let mut idx = [0usize; 4];
        for (k, f) in fields[1..].iter().enumerate() {
            idx[k] = f.parse().map_err(|_| Error::MalformedLine {
                line: lineno,
                reason: format!("bad index {f:?}"),
            })?;
            if idx[k] > n {
                return Err(Error::IndexOutOfRange { index: idx[k], norb: n, line: lineno });
            }
        }
        match idx {
            [0, 0, 0, 0] => constant = value,
            [i, j, 0, 0] if i > 0 && j > 0 => {
                let (p, q) = (i - 1, j - 1);
                set_symmetric(&mut one_body[p * n + q], value, lineno)?;
                set_symmetric(&mut one_body[q * n + p], value, lineno)?;
            }
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                let (p, q, r, s) = (i - 1, j - 1, k - 1, l - 1);
                for (a, b, c, d) in [
                    (p, q, r, s),
                    (q, p, r, s),
                    (p, q, s, r),
                    (q, p, s, r),
                    (r, s, p, q),
                    (s, r, p, q),
                    (r, s, q, p),
                    (s, r, q, p),
                ] {
                    set_symmetric(&mut two_body[((a * n + b) * n + c) * n + d], value, lineno)?;
                }
            }
            // orbital-energy lines `e i 0 0 0` carry no Hamiltonian content
            [_, 0, 0, 0] => {}
            _ => {
                return Err(Error::MalformedLine {
                    line: lineno,
                    reason: format!("unsupported index pattern {idx:?}"),
                })
            }
        }
    }
    for v in one_body.iter_mut().chain(two_body.iter_mut()) {
        if v.is_nan() {
            *v = 0.0;
        }
    }
    Ok(SpatialIntegrals { header, constant, one_body, two_body })
}

/// Expands spatial integrals onto spin-orbitals:
/// `H = Σ h_pq a†_p a_q + ½ Σ (pq|rs) a†_pσ a†_rτ a_sτ a_qσ + constant`.
pub fn spin_orbital_hamiltonian(ints: &SpatialIntegrals) -> Result<FermionHamiltonian> {
    let n = ints.header.norb;
    let n_modes = 2 * n;
    let mut terms = Vec::new();
    for spin in 0..2 {
        let off = spin * n;
        for p in 0..n {
            for q in 0..n {
                let h = ints.h1(p, q);
                if h != 0.0 {
                    terms.push(Interaction::new(h, &[p + off], &[q + off])?);
                }
            }
        }
    }
    for sigma in 0..2 {
        for tau in 0..2 {
            let (os, ot) = (sigma * n, tau * n);
            for p in 0..n {
                for q in 0..n {
                    for r in 0..n {
                        for s in 0..n {
                            let v = ints.eri(p, q, r, s);
                            if v == 0.0 {
                                continue;
                            }
                            let (cp, cr, as_, aq) = (p + os, r + ot, s + ot, q + os);
                            if cp == cr || as_ == aq {
                                continue;
                            }
                            // a†_cp a†_cr a_as a_aq  ->  a†_hi a†_lo a_lo a_hi
                            let mut sign = 0.5;
                            if cp < cr {
                                sign = -sign;
                            }
                            if as_ > aq {
                                sign = -sign;
                            }
                            let create = [cp.min(cr), cp.max(cr)];
                            let annihilate = [as_.min(aq), as_.max(aq)];
                            terms.push(Interaction::new(sign * v, &create, &annihilate)?);
                        }
                    }
                }
            }
        }
    }
    FermionHamiltonian::from_accumulated(n_modes, ints.constant, terms)
}
