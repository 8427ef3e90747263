//! Energy-cutoff filtering and the Jordan–Wigner map to weighted Pauli words.
//!
//! Words are written with qubit 0 as the *leftmost* letter, so
//! `XIIIIIIYYIIIIX` acts with X on qubits 0 and 13 and Y on qubits 7 and 8.
//! (Occupation bitstrings use the opposite order: qubit 0 is rightmost.)

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermion::{FermionHamiltonian, Interaction};

/// Imaginary parts above this after combining words indicate a sign bug.
pub const IMAGINARY_TOL: f64 = 1e-12;
/// Combined coefficients at or below this magnitude are dropped.
const DROP_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }
}

/// Tensor product of single-qubit Paulis in symplectic form, without a
/// coefficient. Y is stored as `x & z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliWord {
    x: u64,
    z: u64,
    n_qubits: u8,
}

impl PauliWord {
    pub fn identity(n_qubits: usize) -> Self {
        Self { x: 0, z: 0, n_qubits: n_qubits as u8 }
    }

    pub fn from_letters(letters: &[Pauli]) -> Result<Self> {
        if letters.len() > 64 {
            return Err(Error::InvalidArgument("words longer than 64 qubits".into()));
        }
        let mut w = Self::identity(letters.len());
        for (q, &p) in letters.iter().enumerate() {
            w.set(q, p);
        }
        Ok(w)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits as usize
    }

    #[inline]
    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits((self.x >> q) & 1 == 1, (self.z >> q) & 1 == 1)
    }

    fn set(&mut self, q: usize, p: Pauli) {
        let bit = 1u64 << q;
        self.x &= !bit;
        self.z &= !bit;
        match p {
            Pauli::I => {}
            Pauli::X => self.x |= bit,
            Pauli::Y => {
                self.x |= bit;
                self.z |= bit;
            }
            Pauli::Z => self.z |= bit,
        }
    }

    /// Qubits flipped by the word (X or Y letters).
    #[inline]
    pub fn flip_mask(&self) -> u64 {
        self.x
    }

    /// Qubits carrying a Z-type phase (Y or Z letters).
    #[inline]
    pub fn phase_mask(&self) -> u64 {
        self.z
    }

    #[inline]
    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    #[inline]
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.support_mask() == 0
    }

    /// Qubits with a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits()).filter(|&q| self.support_mask() >> q & 1 == 1).collect()
    }

    /// `P|index⟩ = phase · |image⟩`.
    #[inline]
    pub fn apply_to_basis(&self, index: u64) -> (u64, Complex64) {
        let mut phase = match self.y_count() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        if (index & self.z).count_ones() & 1 == 1 {
            phase = -phase;
        }
        (index ^ self.x, phase)
    }

    /// Product `self · rhs` as a phase and a word.
    pub fn mul(&self, rhs: &PauliWord) -> (Complex64, PauliWord) {
        let mut phase = Complex64::new(1.0, 0.0);
        let mut out = PauliWord::identity(self.n_qubits());
        let mut mask = self.support_mask() | rhs.support_mask();
        while mask != 0 {
            let q = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            let (p, ph) = mul_letter(self.get(q), rhs.get(q));
            out.set(q, p);
            phase *= ph;
        }
        (phase, out)
    }
}

fn mul_letter(a: Pauli, b: Pauli) -> (Pauli, Complex64) {
    use Pauli::*;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match (a, b) {
        (I, p) | (p, I) => (p, one),
        (X, X) | (Y, Y) | (Z, Z) => (I, one),
        (X, Y) => (Z, i),
        (Y, X) => (Z, -i),
        (Y, Z) => (X, i),
        (Z, Y) => (X, -i),
        (Z, X) => (Y, i),
        (X, Z) => (Y, -i),
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits() {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::Parse(format!("invalid Pauli letter {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_letters(&letters)
    }
}

/// Lexicographic by letters with `I < X < Y < Z`, qubit 0 first.
impl Ord for PauliWord {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.n_qubits().max(other.n_qubits());
        (0..n)
            .map(|q| self.get(q).cmp(&other.get(q)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
            .then(self.n_qubits.cmp(&other.n_qubits))
    }
}

impl PartialOrd for PauliWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Pauli word with a real coefficient (Hartree).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliString {
    pub word: PauliWord,
    pub coefficient: f64,
}

impl PauliString {
    pub fn new(word: PauliWord, coefficient: f64) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite coefficient for {word}")));
        }
        Ok(Self { word, coefficient })
    }

    pub fn parse(word: &str, coefficient: f64) -> Result<Self> {
        Self::new(word.parse()?, coefficient)
    }

    pub fn n_qubits(&self) -> usize {
        self.word.n_qubits()
    }
}

/// Real-weighted sum of distinct Pauli words, sorted by descending
/// coefficient magnitude with lexicographic tie-break.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliString>,
}

fn canonical_order(a: &PauliString, b: &PauliString) -> Ordering {
    b.coefficient
        .abs()
        .total_cmp(&a.coefficient.abs())
        .then_with(|| a.word.cmp(&b.word))
}

impl PauliSum {
    /// Combines duplicate words and sorts canonically.
    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = PauliString>) -> Result<Self> {
        let mut acc: HashMap<PauliWord, f64> = HashMap::new();
        for t in terms {
            if t.n_qubits() != n_qubits {
                return Err(Error::QubitMismatch { expected: n_qubits, found: t.n_qubits() });
            }
            *acc.entry(t.word).or_insert(0.0) += t.coefficient;
        }
        let mut terms: Vec<PauliString> = acc
            .into_iter()
            .filter(|(_, c)| c.abs() > DROP_TOL)
            .map(|(word, coefficient)| PauliString { word, coefficient })
            .collect();
        terms.sort_by(canonical_order);
        Ok(Self { n_qubits, terms })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.terms.iter().find(|t| t.word.is_identity()).map_or(0.0, |t| t.coefficient)
    }

    /// Terms that generate gates, in canonical order.
    pub fn non_identity(&self) -> impl Iterator<Item = &PauliString> {
        self.terms.iter().filter(|t| !t.word.is_identity())
    }

    /// `out = P · input` over the full register.
    pub fn apply(&self, input: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        for t in &self.terms {
            for (idx, &a) in input.iter().enumerate() {
                let (img, ph) = t.word.apply_to_basis(idx as u64);
                out[img as usize] += a * ph * t.coefficient;
            }
        }
    }

    /// One `coefficient word` line per term.
    pub fn to_text(&self) -> String {
        self.terms.iter().map(|t| format!("{:.17e} {}\n", t.coefficient, t.word)).collect()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut n_qubits = None;
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (c, w) = t
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("line {}: expected `coefficient word`", i + 1)))?;
            let c: f64 = c.parse().map_err(|_| Error::Parse(format!("line {}: bad coefficient", i + 1)))?;
            let p = PauliString::parse(w.trim(), c)?;
            n_qubits.get_or_insert(p.n_qubits());
            terms.push(p);
        }
        Self::from_terms(n_qubits.unwrap_or(0), terms)
    }
}

/// Drops interactions with `|h| < cutoff`; surviving coefficients and the
/// constant are unchanged.
pub fn cutoff_filter(h: &FermionHamiltonian, cutoff: f64) -> Result<FermionHamiltonian> {
    if cutoff.is_nan() || cutoff < 0.0 {
        return Err(Error::NegativeCutoff(cutoff));
    }
    h.retain(|t| t.coefficient().abs() >= cutoff)
}

/// `a_q → Z_0…Z_{q-1} (X_q + iY_q)/2`, `a†_q → Z_0…Z_{q-1} (X_q − iY_q)/2`.
fn ladder(q: usize, n_qubits: usize, create: bool) -> [(Complex64, PauliWord); 2] {
    let mut xw = PauliWord::identity(n_qubits);
    for p in 0..q {
        xw.set(p, Pauli::Z);
    }
    let mut yw = xw;
    xw.set(q, Pauli::X);
    yw.set(q, Pauli::Y);
    let yc = if create { Complex64::new(0.0, -0.5) } else { Complex64::new(0.0, 0.5) };
    [(Complex64::new(0.5, 0.0), xw), (yc, yw)]
}

fn expand_interaction(t: &Interaction, n_qubits: usize, acc: &mut HashMap<PauliWord, Complex64>) {
    // operator order left to right: a†_{c_k}…a†_{c_1} a_{a_1}…a_{a_k}
    let factors = t
        .create()
        .iter()
        .rev()
        .map(|&q| ladder(q as usize, n_qubits, true))
        .chain(t.annihilate().iter().map(|&q| ladder(q as usize, n_qubits, false)));
    let mut partial = vec![(Complex64::new(t.coefficient(), 0.0), PauliWord::identity(n_qubits))];
    for f in factors {
        let mut next = Vec::with_capacity(partial.len() * 2);
        for (c, w) in &partial {
            for (fc, fw) in &f {
                let (ph, prod) = w.mul(fw);
                next.push((c * fc * ph, prod));
            }
        }
        partial = next;
    }
    for (c, w) in partial {
        *acc.entry(w).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
}

/// Jordan–Wigner expansion of a hermitian fermionic Hamiltonian.
pub fn jordan_wigner(h: &FermionHamiltonian) -> Result<PauliSum> {
    let n = h.n_modes();
    let mut acc: HashMap<PauliWord, Complex64> = HashMap::new();
    acc.insert(PauliWord::identity(n), Complex64::new(h.constant(), 0.0));
    for t in h.terms() {
        expand_interaction(t, n, &mut acc);
    }
    let mut terms = Vec::with_capacity(acc.len());
    for (word, c) in acc {
        if c.im.abs() > IMAGINARY_TOL {
            return Err(Error::ImaginaryCoefficient { word: word.to_string(), imag: c.im });
        }
        terms.push(PauliString { word, coefficient: c.re });
    }
    PauliSum::from_terms(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_text_uses_qubit_zero_leftmost() {
        let w: PauliWord = "XIIIIIIYYIIIIX".parse().unwrap();
        assert_eq!(w.get(0), Pauli::X);
        assert_eq!(w.get(7), Pauli::Y);
        assert_eq!(w.get(13), Pauli::X);
        assert_eq!(w.support(), vec![0, 7, 8, 13]);
        assert_eq!(w.to_string(), "XIIIIIIYYIIIIX");
    }

    #[test]
    fn letter_products() {
        let x: PauliWord = "X".parse().unwrap();
        let y: PauliWord = "Y".parse().unwrap();
        let (ph, w) = x.mul(&y);
        assert_eq!(w.to_string(), "Z");
        assert_eq!(ph, Complex64::new(0.0, 1.0));
    }

    #[test]
    fn y_action_on_basis() {
        let y: PauliWord = "Y".parse().unwrap();
        assert_eq!(y.apply_to_basis(0), (1, Complex64::new(0.0, 1.0)));
        assert_eq!(y.apply_to_basis(1), (0, Complex64::new(0.0, -1.0)));
    }

    #[test]
    fn number_term_expansion() {
        let h = FermionHamiltonian::new(3, 0.0, vec![Interaction::new(0.8, &[0], &[0]).unwrap()])
            .unwrap();
        let ps = jordan_wigner(&h).unwrap();
        assert_eq!(ps.len(), 2);
        assert!((ps.identity_coefficient() - 0.4).abs() < 1e-15);
        let z = ps.terms().iter().find(|t| t.word.to_string() == "ZII").unwrap();
        assert!((z.coefficient + 0.4).abs() < 1e-15);
    }

    #[test]
    fn hopping_expansion() {
        let h = FermionHamiltonian::new(
            2,
            0.0,
            vec![
                Interaction::new(0.3, &[0], &[1]).unwrap(),
                Interaction::new(0.3, &[1], &[0]).unwrap(),
            ],
        )
        .unwrap();
        let ps = jordan_wigner(&h).unwrap();
        let mut got: Vec<(String, f64)> =
            ps.terms().iter().map(|t| (t.word.to_string(), t.coefficient)).collect();
        got.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].0, "XX");
        assert_eq!(got[1].0, "YY");
        assert!((got[0].1 - 0.15).abs() < 1e-15 && (got[1].1 - 0.15).abs() < 1e-15);
    }

    #[test]
    fn negative_cutoff_rejected() {
        let h = FermionHamiltonian::constant_only(2, 0.0);
        assert!(matches!(cutoff_filter(&h, -0.1), Err(Error::NegativeCutoff(_))));
    }

    #[test]
    fn text_roundtrip_and_ordering() {
        let ps = PauliSum::from_terms(
            2,
            vec![
                PauliString::parse("ZI", 0.1).unwrap(),
                PauliString::parse("XX", -0.5).unwrap(),
                PauliString::parse("IZ", 0.1).unwrap(),
            ],
        )
        .unwrap();
        let words: Vec<String> = ps.terms().iter().map(|t| t.word.to_string()).collect();
        assert_eq!(words, ["XX", "IZ", "ZI"]);
        assert_eq!(PauliSum::from_text(&ps.to_text()).unwrap(), ps);
    }
}
