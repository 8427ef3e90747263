use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;

use super::fock::FockState;
use crate::error::{Error, Result};

/// Matrix elements with magnitude at or below this are treated as exact zeros
/// when deciding Hamiltonian connectivity.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Ascending tuple of at most two distinct spin-orbital indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeTuple {
    modes: [u8; 2],
    len: u8,
}

impl ModeTuple {
    pub fn new(modes: &[usize]) -> Result<Self> {
        match *modes {
            [p] => Ok(Self { modes: [p as u8, 0], len: 1 }),
            [p, q] if p < q => Ok(Self { modes: [p as u8, q as u8], len: 2 }),
            [_, _] => Err(Error::InvalidArgument(format!(
                "mode tuple {modes:?} is not strictly ascending"
            ))),
            _ => Err(Error::InvalidArgument(format!(
                "mode tuple must hold one or two indices, got {modes:?}"
            ))),
        }
    }

    #[inline]
    pub fn as_slice(&self) -> &[u8] {
        &self.modes[..self.len as usize]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn mask(&self) -> u64 {
        self.as_slice().iter().fold(0, |m, &q| m | (1u64 << q))
    }

    fn max_mode(&self) -> usize {
        self.as_slice().iter().copied().max().unwrap_or(0) as usize
    }
}

impl fmt::Debug for ModeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

/// One term `h · a†_{c_k}…a†_{c_1} a_{a_1}…a_{a_k}` of a second-quantized
/// Hamiltonian, with both tuples ascending.
///
/// Acting on a Fock state the annihilators fire highest index first, then the
/// creators lowest index first.
#[derive(Clone, Copy, PartialEq)]
pub struct Interaction {
    coefficient: f64,
    create: ModeTuple,
    annihilate: ModeTuple,
    create_mask: u64,
    annihilate_mask: u64,
}

impl Interaction {
    pub fn new(coefficient: f64, create: &[usize], annihilate: &[usize]) -> Result<Self> {
        let create = ModeTuple::new(create)?;
        let annihilate = ModeTuple::new(annihilate)?;
        Self::from_tuples(coefficient, create, annihilate)
    }

    pub fn from_tuples(coefficient: f64, create: ModeTuple, annihilate: ModeTuple) -> Result<Self> {
        if create.len() != annihilate.len() {
            return Err(Error::InvalidArgument(format!(
                "interaction {create:?} <- {annihilate:?} does not conserve particle number"
            )));
        }
        if !coefficient.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite coefficient {coefficient}")));
        }
        Ok(Self {
            coefficient,
            create,
            annihilate,
            create_mask: create.mask(),
            annihilate_mask: annihilate.mask(),
        })
    }

    #[inline]
    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    #[inline]
    pub fn create(&self) -> &[u8] {
        self.create.as_slice()
    }

    #[inline]
    pub fn annihilate(&self) -> &[u8] {
        self.annihilate.as_slice()
    }

    pub fn key(&self) -> (ModeTuple, ModeTuple) {
        (self.create, self.annihilate)
    }

    pub fn is_diagonal(&self) -> bool {
        self.create == self.annihilate
    }

    /// The hermitian-conjugate term (same coefficient, tuples swapped).
    pub fn adjoint(&self) -> Self {
        Self {
            coefficient: self.coefficient,
            create: self.annihilate,
            annihilate: self.create,
            create_mask: self.annihilate_mask,
            annihilate_mask: self.create_mask,
        }
    }

    fn max_mode(&self) -> usize {
        self.create.max_mode().max(self.annihilate.max_mode())
    }
}

impl fmt::Debug for Interaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+.12e} c{:?} a{:?}", self.coefficient, self.create, self.annihilate)
    }
}

#[inline]
fn parity_below(bits: u64, q: u8) -> bool {
    (bits & ((1u64 << q) - 1)).count_ones() & 1 == 1
}

/// Applies the operator part of `term` (coefficient ignored) to `state`.
///
/// Returns the image state and the fermionic sign, or `None` when the
/// operator annihilates the state.
#[inline]
pub fn apply_interaction(term: &Interaction, state: FockState) -> Option<(FockState, f64)> {
    let mut bits = state.index();
    if bits & term.annihilate_mask != term.annihilate_mask {
        return None;
    }
    let mut odd = false;
    for &p in term.annihilate.as_slice().iter().rev() {
        odd ^= parity_below(bits, p);
        bits &= !(1u64 << p);
    }
    if bits & term.create_mask != 0 {
        return None;
    }
    for &p in term.create.as_slice() {
        odd ^= parity_below(bits, p);
        bits |= 1u64 << p;
    }
    let sign = if odd { -1.0 } else { 1.0 };
    Some((FockState::from_bits_unchecked(bits, state.n_modes()), sign))
}

/// Second-quantized Hamiltonian: a constant plus canonical one- and two-body
/// interactions with unique `(create, annihilate)` keys.
#[derive(Clone, Debug)]
pub struct FermionHamiltonian {
    n_modes: usize,
    constant: f64,
    terms: Vec<Interaction>,
}

impl FermionHamiltonian {
    /// Validates canonical form, unique keys, mode range and hermiticity.
    pub fn new(n_modes: usize, constant: f64, mut terms: Vec<Interaction>) -> Result<Self> {
        if n_modes > super::fock::MAX_MODES {
            return Err(Error::InvalidArgument(format!("{n_modes} modes are not supported")));
        }
        for t in &terms {
            if t.max_mode() >= n_modes {
                return Err(Error::QubitOutOfRange { index: t.max_mode(), qubits: n_modes });
            }
        }
        terms.sort_by(|a, b| a.key().cmp(&b.key()));
        if let Some(w) = terms.windows(2).find(|w| w[0].key() == w[1].key()) {
            return Err(Error::InvalidArgument(format!("duplicate interaction {:?}", w[1])));
        }
        let h = Self { n_modes, constant, terms };
        h.check_hermitian(1e-10)?;
        Ok(h)
    }

    /// Sums duplicate keys and drops sums with magnitude at or below
    /// [`ZERO_THRESHOLD`] before validating.
    pub fn from_accumulated(
        n_modes: usize,
        constant: f64,
        terms: impl IntoIterator<Item = Interaction>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(ModeTuple, ModeTuple), f64> = BTreeMap::new();
        for t in terms {
            *acc.entry(t.key()).or_insert(0.0) += t.coefficient();
        }
        let merged = acc
            .into_iter()
            .filter(|(_, h)| h.abs() > ZERO_THRESHOLD)
            .map(|((c, a), h)| Interaction::from_tuples(h, c, a))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_modes, constant, merged)
    }

    pub fn constant_only(n_modes: usize, constant: f64) -> Self {
        Self { n_modes, constant, terms: Vec::new() }
    }

    fn check_hermitian(&self, tol: f64) -> Result<()> {
        let index: HashMap<_, f64> = self.terms.iter().map(|t| (t.key(), t.coefficient())).collect();
        for t in self.terms.iter().filter(|t| !t.is_diagonal()) {
            match index.get(&t.adjoint().key()) {
                Some(h) if (h - t.coefficient()).abs() <= tol * (1.0 + h.abs()) => {}
                Some(h) => {
                    return Err(Error::NonHermitian(format!(
                        "{t:?} has conjugate coefficient {h:e}"
                    )))
                }
                None => return Err(Error::NonHermitian(format!("{t:?} has no conjugate term"))),
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    #[inline]
    pub fn constant(&self) -> f64 {
        self.constant
    }

    #[inline]
    pub fn terms(&self) -> &[Interaction] {
        &self.terms
    }

    /// Keeps the terms satisfying `keep`; hermiticity is the caller's concern
    /// and is re-checked.
    pub fn retain(&self, keep: impl Fn(&Interaction) -> bool) -> Result<Self> {
        let terms = self.terms.iter().copied().filter(|t| keep(t)).collect();
        Self::new(self.n_modes, self.constant, terms)
    }

    /// `⟨bra|H|ket⟩`, exact.
    pub fn matrix_element(&self, bra: FockState, ket: FockState) -> f64 {
        if bra.electron_count() != ket.electron_count() || bra.distance(&ket) > 4 {
            return 0.0;
        }
        let mut value = if bra == ket { self.constant } else { 0.0 };
        for t in &self.terms {
            if let Some((image, sign)) = apply_interaction(t, ket) {
                if image == bra {
                    value += sign * t.coefficient();
                }
            }
        }
        value
    }

    /// Nonzero entries of the column `H|ket⟩`, summed over terms, sorted by
    /// state index. The diagonal includes the constant.
    pub fn column(&self, ket: FockState) -> Vec<(FockState, f64)> {
        let mut acc: BTreeMap<FockState, f64> = BTreeMap::new();
        acc.insert(ket, self.constant);
        for t in &self.terms {
            if let Some((image, sign)) = apply_interaction(t, ket) {
                *acc.entry(image).or_insert(0.0) += sign * t.coefficient();
            }
        }
        acc.into_iter().collect()
    }

    /// Every state `n` with `|⟨n|H|ket⟩|` above [`ZERO_THRESHOLD`], ascending.
    pub fn connected_states(&self, ket: FockState) -> Vec<FockState> {
        self.column(ket)
            .into_iter()
            .filter(|(_, v)| v.abs() > ZERO_THRESHOLD)
            .map(|(s, _)| s)
            .collect()
    }

    /// `out = H · input` over the full `2^Q` register.
    pub fn apply_dense(&self, input: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        let dim = 1usize << self.n_modes;
        if input.len() != dim || out.len() != dim {
            return Err(Error::QubitMismatch {
                expected: self.n_modes,
                found: input.len().trailing_zeros() as usize,
            });
        }
        for (o, &a) in out.iter_mut().zip(input) {
            *o = a * self.constant;
        }
        for (idx, &amp) in input.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ket = FockState::from_bits_unchecked(idx as u64, self.n_modes);
            for t in &self.terms {
                if let Some((image, sign)) = apply_interaction(t, ket) {
                    out[image.index() as usize] += amp * (sign * t.coefficient());
                }
            }
        }
        Ok(())
    }

    /// Coefficient of the identity in the qubit expansion, `Tr(H) / 2^Q`.
    pub fn identity_weight(&self) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .filter(|t| t.is_diagonal())
                .map(|t| t.coefficient() / f64::from(1u32 << t.create().len()))
                .sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(occ: &[usize], n: usize) -> FockState {
        FockState::from_occupied(occ, n).unwrap()
    }

    #[test]
    fn number_term_keeps_state() {
        let t = Interaction::new(1.0, &[0], &[0]).unwrap();
        assert_eq!(apply_interaction(&t, st(&[0], 4)), Some((st(&[0], 4), 1.0)));
    }

    #[test]
    fn annihilating_empty_mode_vanishes() {
        let t = Interaction::new(1.0, &[1], &[1]).unwrap();
        assert_eq!(apply_interaction(&t, st(&[0], 4)), None);
    }

    #[test]
    fn hop_picks_up_parity_sign() {
        // a†3 a0 |0,1>: a0 has no modes below, a†3 passes mode 1
        let t = Interaction::new(1.0, &[3], &[0]).unwrap();
        assert_eq!(apply_interaction(&t, st(&[0, 1], 4)), Some((st(&[1, 3], 4), -1.0)));
    }

    #[test]
    fn blocked_creation_vanishes() {
        let t = Interaction::new(1.0, &[1], &[0]).unwrap();
        assert_eq!(apply_interaction(&t, st(&[0, 1], 4)), None);
    }

    #[test]
    fn rejects_non_canonical_terms() {
        assert!(Interaction::new(1.0, &[2, 1], &[0, 3]).is_err());
        assert!(Interaction::new(1.0, &[1], &[0, 3]).is_err());
        assert!(Interaction::new(1.0, &[1, 1], &[0, 3]).is_err());
    }

    #[test]
    fn missing_conjugate_is_non_hermitian() {
        let t = Interaction::new(0.3, &[1], &[0]).unwrap();
        assert!(matches!(
            FermionHamiltonian::new(2, 0.0, vec![t]),
            Err(Error::NonHermitian(_))
        ));
        assert!(FermionHamiltonian::new(2, 0.0, vec![t, t.adjoint()]).is_ok());
    }

    #[test]
    fn accumulation_sums_duplicates() {
        let a = Interaction::new(0.25, &[0], &[0]).unwrap();
        let h = FermionHamiltonian::from_accumulated(2, 0.0, vec![a, a]).unwrap();
        assert_eq!(h.terms().len(), 1);
        assert_eq!(h.terms()[0].coefficient(), 0.5);
    }

    #[test]
    fn number_term_matrix_element() {
        let h = FermionHamiltonian::new(2, 0.1, vec![Interaction::new(0.5, &[0], &[0]).unwrap()])
            .unwrap();
        assert!((h.matrix_element(st(&[0], 2), st(&[0], 2)) - 0.6).abs() < 1e-15);
        assert_eq!(h.connected_states(st(&[0], 2)), vec![st(&[0], 2)]);
    }

    #[test]
    fn far_apart_states_do_not_couple() {
        let h = FermionHamiltonian::new(
            10,
            0.0,
            vec![
                Interaction::new(0.2, &[0, 1], &[2, 3]).unwrap(),
                Interaction::new(0.2, &[2, 3], &[0, 1]).unwrap(),
            ],
        )
        .unwrap();
        let a = st(&[0, 1, 2], 10);
        let b = st(&[5, 6, 7], 10);
        assert_eq!(h.matrix_element(a, b), 0.0);
    }

    #[test]
    fn identity_weight_counts_diagonal_terms() {
        let h = FermionHamiltonian::new(
            3,
            1.0,
            vec![
                Interaction::new(0.5, &[0], &[0]).unwrap(),
                Interaction::new(0.8, &[0, 2], &[0, 2]).unwrap(),
            ],
        )
        .unwrap();
        assert!((h.identity_weight() - (1.0 + 0.25 + 0.2)).abs() < 1e-15);
    }
}
