use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermion::{FermionHamiltonian, FockState};
use crate::qubit_map::{PauliSum, PauliWord};

/// Allowed drift of the 2-norm away from one.
pub const NORM_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense `2^Q` amplitude vector; basis index bit `q` is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// Largest register this dense representation accepts.
    pub const MAX_QUBITS: usize = 30;

    pub fn basis(n_qubits: usize, index: u64) -> Result<Self> {
        if n_qubits > Self::MAX_QUBITS {
            return Err(Error::InvalidArgument(format!("{n_qubits} qubits exceed the dense limit")));
        }
        let dim = 1usize << n_qubits;
        if index as usize >= dim {
            return Err(Error::InvalidArgument(format!("basis index {index} outside 2^{n_qubits}")));
        }
        let mut amps = vec![ZERO; dim];
        amps[index as usize] = ONE;
        Ok(Self { n_qubits, amps })
    }

    pub fn zero_state(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    /// Accepts amplitudes that are already normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n_qubits = dim_to_qubits(amps.len())?;
        let norm = l2(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let n_qubits = dim_to_qubits(amps.len())?;
        let norm = l2(&amps);
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n_qubits, amps })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    #[inline]
    pub fn amplitude(&self, state: FockState) -> Complex64 {
        self.amps[state.index() as usize]
    }

    pub fn norm(&self) -> f64 {
        l2(&self.amps)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Statevector) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn fidelity(&self, other: &Statevector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// `‖self − other‖₂`
    pub fn distance(&self, other: &Statevector) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    fn check_same(&self, other: &Statevector) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch { expected: self.n_qubits, found: other.n_qubits });
        }
        Ok(())
    }

    /// Total probability of states with the given α/β electron counts, with α
    /// on the lower half of the register.
    pub fn sector_weight(&self, n_alpha: u32, n_beta: u32) -> f64 {
        let half = self.n_qubits / 2;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let s = FockState::from_bits_unchecked(*i as u64, self.n_qubits);
                s.count_in(0, half) == n_alpha && s.count_in(half, self.n_qubits) == n_beta
            })
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Applies `exp(-i·angle·P)` in place.
    pub fn apply_pauli_exponential(&mut self, word: &PauliWord, angle: f64) -> Result<()> {
        if word.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { expected: self.n_qubits, found: word.n_qubits() });
        }
        let (s, c) = angle.sin_cos();
        let minus_i_sin = Complex64::new(0.0, -s);
        let flip = word.flip_mask();
        if flip == 0 {
            let plus = Complex64::new(c, -s);
            let minus = Complex64::new(c, s);
            let zmask = word.phase_mask();
            for (i, a) in self.amps.iter_mut().enumerate() {
                // eigenvalue +1 for even parity on the Z support
                *a *= if (i as u64 & zmask).count_ones() & 1 == 0 { plus } else { minus };
            }
            return Ok(());
        }
        let high = 63 - flip.leading_zeros();
        let high_bit = 1usize << high;
        for i in 0..self.amps.len() {
            if i & high_bit != 0 {
                continue;
            }
            let j = i ^ flip as usize;
            let (_, ph_i) = word.apply_to_basis(i as u64); // P|i> = ph_i |j>
            let (_, ph_j) = word.apply_to_basis(j as u64); // P|j> = ph_j |i>
            let (ai, aj) = (self.amps[i], self.amps[j]);
            self.amps[i] = ai * c + minus_i_sin * ph_j * aj;
            self.amps[j] = aj * c + minus_i_sin * ph_i * ai;
        }
        Ok(())
    }

    /// `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩` over the full register.
    pub fn expectation(&self, h: &FermionHamiltonian) -> Result<f64> {
        if h.n_modes() != self.n_qubits {
            return Err(Error::QubitMismatch { expected: h.n_modes(), found: self.n_qubits });
        }
        let mut out = vec![ZERO; self.amps.len()];
        h.apply_dense(&self.amps, &mut out)?;
        Ok(rayleigh(&self.amps, &out))
    }

    pub fn pauli_expectation(&self, ps: &PauliSum) -> Result<f64> {
        if ps.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { expected: ps.n_qubits(), found: self.n_qubits });
        }
        let mut out = vec![ZERO; self.amps.len()];
        ps.apply(&self.amps, &mut out);
        Ok(rayleigh(&self.amps, &out))
    }
}

fn rayleigh(v: &[Complex64], hv: &[Complex64]) -> f64 {
    let num: Complex64 = v.iter().zip(hv).map(|(a, b)| a.conj() * b).sum();
    num.re / v.iter().map(|a| a.norm_sqr()).sum::<f64>()
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn dim_to_qubits(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("length {len} is not a power of two")));
    }
    Ok(len.trailing_zeros() as usize)
}

/// The computational basis state `|hf⟩`, as prepared by X gates on the
/// occupied qubits.
pub fn prepare_reference(hf: FockState) -> Result<Statevector> {
    Statevector::basis(hf.n_modes(), hf.index())
}

/// Returns `exp(-i·angle·P) ψ`.
pub fn pauli_exponential(psi: &Statevector, word: &PauliWord, angle: f64) -> Result<Statevector> {
    let mut out = psi.clone();
    out.apply_pauli_exponential(word, angle)?;
    Ok(out)
}
