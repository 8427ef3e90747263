//! Minimal guided-sampling subspace: the Fock states the Hamiltonian connects
//! to the measured shots, the Hamiltonian restricted to their span, its
//! lowest eigenpair, and the FCI reference used to score it.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fermion::{enumerate_sector, FermionHamiltonian, FockState, SystemMetadata};
use crate::linalg::{lanczos_lowest, max_asymmetry, symmetric_eigen, SparseSymmetric};
use crate::sampler::SampleSet;

/// Bases up to this dimension are diagonalized densely.
pub const DENSE_LIMIT: usize = 4096;
/// Largest particle-number sector the FCI reference will handle.
pub const FCI_SECTOR_LIMIT: usize = 100_000;
/// Ground states closer than this to the first excited state count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;
const SYMMETRY_TOL: f64 = 1e-10;
const NORMALIZATION_TOL: f64 = 1e-8;
const LANCZOS_TOL: f64 = 1e-10;

/// Sorted, duplicate-free set of Fock states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    states: Vec<FockState>,
}

impl SubspaceBasis {
    pub fn new(states: impl IntoIterator<Item = FockState>) -> Result<Self> {
        let states: Vec<FockState> = states.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if states.is_empty() {
            return Err(Error::InvalidArgument("subspace basis must hold at least one state".into()));
        }
        let n = states[0].n_modes();
        if let Some(s) = states.iter().find(|s| s.n_modes() != n) {
            return Err(Error::QubitMismatch { expected: n, found: s.n_modes() });
        }
        Ok(Self { states })
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn position(&self, s: FockState) -> Option<usize> {
        self.states.binary_search(&s).ok()
    }

    pub fn contains(&self, s: FockState) -> bool {
        self.position(s).is_some()
    }

    /// One occupation bitstring per line.
    pub fn to_text(&self) -> String {
        self.states.iter().map(|s| format!("{s}\n")).collect()
    }
}

/// Real amplitudes over a sorted list of Fock states.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    states: Vec<FockState>,
    coeffs: Vec<f64>,
}

impl FockVector {
    /// `states` must be sorted ascending without duplicates.
    pub fn new(states: Vec<FockState>, coeffs: Vec<f64>) -> Result<Self> {
        if states.len() != coeffs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} states but {} coefficients",
                states.len(),
                coeffs.len()
            )));
        }
        if states.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("states must be strictly ascending".into()));
        }
        Ok(Self { states, coeffs })
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn coefficient(&self, s: FockState) -> f64 {
        self.states.binary_search(&s).map_or(0.0, |i| self.coeffs[i])
    }

    /// `⟨self|other⟩` by merging the sorted supports.
    pub fn dot(&self, other: &FockVector) -> f64 {
        let (mut i, mut j, mut acc) = (0, 0, 0.0);
        while i < self.states.len() && j < other.states.len() {
            match self.states[i].cmp(&other.states[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += self.coeffs[i] * other.coeffs[j];
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// `a·self + b·other` over the union of supports.
    pub fn combine(&self, a: f64, other: &FockVector, b: f64) -> FockVector {
        let mut states = Vec::with_capacity(self.states.len() + other.states.len());
        let mut coeffs = Vec::with_capacity(states.capacity());
        let (mut i, mut j) = (0, 0);
        loop {
            let next = match (self.states.get(i), other.states.get(j)) {
                (None, None) => break,
                (Some(&s), None) => {
                    i += 1;
                    (s, a * self.coeffs[i - 1])
                }
                (None, Some(&t)) => {
                    j += 1;
                    (t, b * other.coeffs[j - 1])
                }
                (Some(&s), Some(&t)) if s < t => {
                    i += 1;
                    (s, a * self.coeffs[i - 1])
                }
                (Some(&s), Some(&t)) if t < s => {
                    j += 1;
                    (t, b * other.coeffs[j - 1])
                }
                (Some(&s), Some(_)) => {
                    i += 1;
                    j += 1;
                    (s, a * self.coeffs[i - 1] + b * other.coeffs[j - 1])
                }
            };
            states.push(next.0);
            coeffs.push(next.1);
        }
        FockVector { states, coeffs }
    }
}

/// Lowest eigenpair of a subspace Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult {
    pub energy: f64,
    /// Unit-norm, gauge-fixed coefficients in basis order.
    pub coefficients: Vec<f64>,
    /// All eigenvalues ascending when the dense solver ran.
    pub eigenvalues: Option<Vec<f64>>,
}

impl SpectralResult {
    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }
}

/// Basis plus its optimized eigenpair.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceSolution {
    pub basis: SubspaceBasis,
    pub spectral: SpectralResult,
}

impl SubspaceSolution {
    pub fn energy(&self) -> f64 {
        self.spectral.energy
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn state(&self) -> FockVector {
        FockVector { states: self.basis.states.clone(), coeffs: self.spectral.coefficients.clone() }
    }

    /// Header with the energy, then `bitstring coefficient` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("# energy_ha={:.15}\n# dim={}\n", self.energy(), self.dim());
        for (st, c) in self.basis.states.iter().zip(&self.spectral.coefficients) {
            let _ = writeln!(s, "{st} {c:.17e}");
        }
        s
    }
}

/// Exact sector ground state.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundTruth {
    pub energy: f64,
    pub state: FockVector,
    /// Gap between the two lowest sector eigenvalues.
    pub gap: f64,
    pub sector_dim: usize,
    /// All sector eigenvalues when the dense solver ran.
    pub eigenvalues: Option<Vec<f64>>,
    /// All sector eigenvectors (columns) when the dense solver ran.
    pub eigenvectors: Option<DMatrix<f64>>,
}

/// Makes the largest-magnitude component (lowest index on ties) positive.
pub fn fix_gauge(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(pivot) = v.iter().position(|x| x.abs() >= max - 1e-12 * max) {
        if v[pivot] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Union of `connected_states` over every sampled state.
pub fn expand_basis(h: &FermionHamiltonian, samples: &SampleSet) -> Result<SubspaceBasis> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let support: Vec<FockState> = samples.support().collect();
    let sets: Vec<Vec<FockState>> = support.par_iter().map(|&s| h.connected_states(s)).collect();
    SubspaceBasis::new(sets.into_iter().flatten())
}

fn column_entries(h: &FermionHamiltonian, states: &[FockState], j: usize) -> Vec<(usize, f64)> {
    h.column(states[j])
        .into_iter()
        .filter_map(|(s, v)| states.binary_search(&s).ok().map(|i| (i, v)))
        .filter(|&(_, v)| v != 0.0)
        .collect()
}

/// Dense `⟨b_i|H|b_j⟩` over a sorted state list.
pub fn assemble_subspace_hamiltonian(h: &FermionHamiltonian, states: &[FockState]) -> DMatrix<f64> {
    let d = states.len();
    let columns: Vec<Vec<(usize, f64)>> = (0..d).into_par_iter().map(|j| column_entries(h, states, j)).collect();
    let mut m = DMatrix::zeros(d, d);
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col {
            m[(i, j)] = v;
        }
    }
    m
}

/// Sparse form of [`assemble_subspace_hamiltonian`].
pub fn assemble_sparse(h: &FermionHamiltonian, states: &[FockState]) -> SparseSymmetric {
    // symmetric, so columns double as rows
    let rows = (0..states.len()).into_par_iter().map(|j| column_entries(h, states, j)).collect();
    SparseSymmetric::from_rows(rows)
}

/// Lowest eigenpair of a dense symmetric matrix, gauge-fixed.
pub fn diagonalize(m: &DMatrix<f64>) -> Result<SpectralResult> {
    if m.nrows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let asym = max_asymmetry(m);
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    let eig = symmetric_eigen(m)?;
    let mut coefficients: Vec<f64> = eig.vectors.column(0).iter().copied().collect();
    fix_gauge(&mut coefficients);
    Ok(SpectralResult { energy: eig.values[0], coefficients, eigenvalues: Some(eig.values) })
}

fn lanczos_start(diag: impl Iterator<Item = f64>, dim: usize) -> Vec<f64> {
    let diag: Vec<f64> = diag.collect();
    let lowest = diag
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map_or(0, |(i, _)| i);
    let mut v = vec![1e-3 / (dim as f64).sqrt(); dim];
    v[lowest] += 1.0;
    v
}

fn sparse_diagonal(m: &SparseSymmetric, dim: usize) -> Vec<f64> {
    let mut e = vec![0.0; dim];
    let mut y = vec![0.0; dim];
    (0..dim)
        .map(|i| {
            e[i] = 1.0;
            m.matvec(&e, &mut y);
            e[i] = 0.0;
            y[i]
        })
        .collect()
}

/// Builds and solves the subspace eigenproblem, dense up to [`DENSE_LIMIT`]
/// and Lanczos above.
pub fn optimize(h: &FermionHamiltonian, basis: SubspaceBasis) -> Result<SubspaceSolution> {
    let d = basis.dim();
    let spectral = if d <= DENSE_LIMIT {
        diagonalize(&assemble_subspace_hamiltonian(h, basis.states()))?
    } else {
        let m = assemble_sparse(h, basis.states());
        let start = lanczos_start(basis.states().iter().map(|&s| h.matrix_element(s, s)), d);
        let (values, mut vectors) = lanczos_lowest(&m, &start, 1, LANCZOS_TOL, 600)?;
        fix_gauge(&mut vectors[0]);
        SpectralResult { energy: values[0], coefficients: vectors.swap_remove(0), eigenvalues: None }
    };
    Ok(SubspaceSolution { basis, spectral })
}

/// Exact ground state of the `(N↑, N↓)` sector.
///
/// When the two lowest levels are within [`DEGENERACY_TOL`] the returned
/// state is the normalized projection of the Hartree–Fock state onto the
/// degenerate eigenspace (the member with maximal HF overlap).
pub fn fci_ground_state(h: &FermionHamiltonian, meta: &SystemMetadata) -> Result<GroundTruth> {
    let sector = enumerate_sector(meta.n_spatial(), meta.n_alpha, meta.n_beta);
    let dim = sector.len();
    if dim > FCI_SECTOR_LIMIT {
        return Err(Error::SectorTooLarge { dim, limit: FCI_SECTOR_LIMIT });
    }
    if dim <= DENSE_LIMIT {
        let m = assemble_subspace_hamiltonian(h, &sector);
        let eig = symmetric_eigen(&m)?;
        let e0 = eig.values[0];
        let gap = eig.values.get(1).map_or(f64::INFINITY, |e1| e1 - e0);
        let mut coeffs: Vec<f64> = eig.vectors.column(0).iter().copied().collect();
        if gap < DEGENERACY_TOL {
            if let Ok(hf) = sector.binary_search(&meta.hf_occupation) {
                let mut proj = vec![0.0; dim];
                for k in eig.values.iter().take_while(|&&e| e - e0 < DEGENERACY_TOL).enumerate().map(|(k, _)| k) {
                    let w = eig.vectors[(hf, k)];
                    for (p, v) in proj.iter_mut().zip(eig.vectors.column(k).iter()) {
                        *p += w * v;
                    }
                }
                let n = proj.iter().map(|x| x * x).sum::<f64>().sqrt();
                if n > 1e-12 {
                    coeffs = proj.into_iter().map(|x| x / n).collect();
                }
            }
        }
        fix_gauge(&mut coeffs);
        Ok(GroundTruth {
            energy: e0,
            state: FockVector { states: sector, coeffs },
            gap,
            sector_dim: dim,
            eigenvalues: Some(eig.values),
            eigenvectors: Some(eig.vectors),
        })
    } else {
        let m = assemble_sparse(h, &sector);
        let start = lanczos_start(sparse_diagonal(&m, dim).into_iter(), dim);
        let (values, mut vectors) = lanczos_lowest(&m, &start, 2, LANCZOS_TOL, 800)?;
        let gap = values.get(1).map_or(f64::INFINITY, |e1| e1 - values[0]);
        fix_gauge(&mut vectors[0]);
        Ok(GroundTruth {
            energy: values[0],
            state: FockVector { states: sector, coeffs: vectors.swap_remove(0) },
            gap,
            sector_dim: dim,
            eigenvalues: None,
            eigenvectors: None,
        })
    }
}

/// Rayleigh quotient `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩` for a real Fock-space vector.
/// Use [`crate::simulator::Statevector::expectation`] for register states.
pub fn expectation_energy(h: &FermionHamiltonian, psi: &FockVector) -> Result<f64> {
    let nn: f64 = psi.coeffs.iter().map(|c| c * c).sum();
    if nn == 0.0 {
        return Err(Error::ZeroVector);
    }
    let partial: Vec<f64> = psi
        .states
        .par_iter()
        .zip(psi.coeffs.par_iter())
        .filter(|(_, &c)| c != 0.0)
        .map(|(&s, &c)| {
            h.column(s)
                .into_iter()
                .map(|(t, v)| psi.coefficient(t) * v * c)
                .sum::<f64>()
        })
        .collect();
    let num: f64 = partial.iter().sum();
    Ok(num / nn)
}

fn check_normalized(v: &FockVector) -> Result<()> {
    let n = v.norm();
    if (n - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(n));
    }
    Ok(())
}

/// `δΨ = √(2(1 − ⟨Ψ_g|ψ⟩))` for real, normalized, gauge-fixed states.
pub fn state_deviation(psi: &FockVector, gt: &GroundTruth) -> Result<f64> {
    check_normalized(psi)?;
    check_normalized(&gt.state)?;
    Ok((2.0 * (1.0 - gt.state.dot(psi))).max(0.0).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyDeviation {
    /// `(E_δ − E_g)·δΨ²`
    pub delta_e: f64,
    /// Energy of `ψ − Ψ_g`; `None` when the difference vanishes.
    pub e_delta: Option<f64>,
    pub delta_psi_sq: f64,
    /// `E(ψ) − E_g` computed directly.
    pub direct_gap: f64,
}

/// Energy deviation from the state deviation, alongside the direct gap.
pub fn energy_deviation(psi: &FockVector, gt: &GroundTruth, h: &FermionHamiltonian) -> Result<EnergyDeviation> {
    let dpsi = state_deviation(psi, gt)?;
    let delta_psi_sq = dpsi * dpsi;
    let direct_gap = expectation_energy(h, psi)? - gt.energy;
    let diff = psi.combine(1.0, &gt.state, -1.0);
    if diff.norm() == 0.0 {
        return Ok(EnergyDeviation { delta_e: 0.0, e_delta: None, delta_psi_sq, direct_gap });
    }
    let e_delta = expectation_energy(h, &diff)?;
    Ok(EnergyDeviation {
        delta_e: (e_delta - gt.energy) * delta_psi_sq,
        e_delta: Some(e_delta),
        delta_psi_sq,
        direct_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::Interaction;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn one_by_one() {
        let r = diagonalize(&DMatrix::from_element(1, 1, 2.0)).unwrap();
        assert_eq!(r.energy, 2.0);
        assert_eq!(r.coefficients, vec![1.0]);
    }

    #[test]
    fn two_by_two_analytic() {
        let r = diagonalize(&DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert!((r.energy + 1.0).abs() < 1e-14);
        assert!((r.coefficients[0] - FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((r.coefficients[1] + FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(diagonalize(&DMatrix::zeros(0, 0)), Err(Error::EmptyMatrix)));
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.5, 0.0]);
        assert!(matches!(diagonalize(&m), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn gauge_prefers_lowest_index_on_ties() {
        let mut v = vec![-0.5, 0.5, 0.1];
        fix_gauge(&mut v);
        assert_eq!(v, vec![0.5, -0.5, -0.1]);
    }

    #[test]
    fn diagonal_hamiltonian_basis_is_sample_support() {
        let h = FermionHamiltonian::new(
            4,
            0.0,
            (0..4).map(|q| Interaction::new(0.1 * (q + 1) as f64, &[q], &[q]).unwrap()).collect(),
        )
        .unwrap();
        let a = FockState::from_bitstring("0101").unwrap();
        let b = FockState::from_bitstring("0011").unwrap();
        let s = SampleSet::from_counts(4, vec![(a, 5), (b, 1)], 0).unwrap();
        let basis = expand_basis(&h, &s).unwrap();
        assert_eq!(basis.states(), &[b, a]);
    }

    #[test]
    fn empty_samples_rejected() {
        let h = FermionHamiltonian::constant_only(2, 0.0);
        let s = SampleSet::from_counts(2, Vec::new(), 0).unwrap();
        assert!(matches!(expand_basis(&h, &s), Err(Error::EmptySampleSet)));
    }

    #[test]
    fn rayleigh_quotient_scale_invariant() {
        let h = FermionHamiltonian::new(
            2,
            0.3,
            vec![
                Interaction::new(-0.5, &[0], &[1]).unwrap(),
                Interaction::new(-0.5, &[1], &[0]).unwrap(),
                Interaction::new(0.2, &[1], &[1]).unwrap(),
            ],
        )
        .unwrap();
        let st = vec![FockState::from_bitstring("01").unwrap(), FockState::from_bitstring("10").unwrap()];
        let v = FockVector::new(st.clone(), vec![0.6, 0.8]).unwrap();
        let w = FockVector::new(st, vec![1.8, 2.4]).unwrap();
        let e1 = expectation_energy(&h, &v).unwrap();
        assert!((e1 - expectation_energy(&h, &w).unwrap()).abs() < 1e-14);
        // 0.3 + 0.2*0.64 - 2*0.5*0.48
        assert!((e1 - (0.3 + 0.128 - 0.48)).abs() < 1e-14);
        let zero = FockVector::new(vec![], vec![]).unwrap();
        assert!(matches!(expectation_energy(&h, &zero), Err(Error::ZeroVector)));
    }

    #[test]
    fn combine_merges_supports() {
        let s = |b: &str| FockState::from_bitstring(b).unwrap();
        let a = FockVector::new(vec![s("001"), s("100")], vec![1.0, 2.0]).unwrap();
        let b = FockVector::new(vec![s("010"), s("100")], vec![3.0, 4.0]).unwrap();
        let c = a.combine(1.0, &b, -1.0);
        assert_eq!(c.states(), &[s("001"), s("010"), s("100")]);
        assert_eq!(c.coeffs(), &[1.0, -3.0, -2.0]);
        assert_eq!(a.dot(&b), 8.0);
    }
}
