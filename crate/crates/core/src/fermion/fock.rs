use std::fmt;

use crate::error::{Error, Result};

/// Largest register supported by the `u64` occupation encoding.
pub const MAX_MODES: usize = 64;

/// Occupation-number basis state over `n_modes` spin-orbitals.
///
/// Bit `q` of the index is set when spin-orbital `q` is occupied, so the
/// integer index is also the computational-basis index of the qubit register
/// (qubit 0 is the least significant bit).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    bits: u64,
    n_modes: u8,
}

impl FockState {
    pub fn new(bits: u64, n_modes: usize) -> Result<Self> {
        if n_modes > MAX_MODES {
            return Err(Error::InvalidArgument(format!(
                "{n_modes} modes exceed the {MAX_MODES}-mode limit"
            )));
        }
        if n_modes < MAX_MODES && bits >> n_modes != 0 {
            return Err(Error::InvalidArgument(format!(
                "occupation {bits:#x} has bits beyond mode {n_modes}"
            )));
        }
        Ok(Self { bits, n_modes: n_modes as u8 })
    }

    /// Caller guarantees `bits < 2^n_modes`.
    #[inline]
    pub(crate) fn from_bits_unchecked(bits: u64, n_modes: usize) -> Self {
        debug_assert!(n_modes == MAX_MODES || bits >> n_modes == 0);
        Self { bits, n_modes: n_modes as u8 }
    }

    pub fn vacuum(n_modes: usize) -> Result<Self> {
        Self::new(0, n_modes)
    }

    pub fn from_occupied(occupied: &[usize], n_modes: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &q in occupied {
            if q >= n_modes {
                return Err(Error::QubitOutOfRange { index: q, qubits: n_modes });
            }
            bits |= 1 << q;
        }
        Self::new(bits, n_modes)
    }

    /// Parses a bitstring whose rightmost character is mode 0.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u64;
        for (q, ch) in s.chars().rev().enumerate() {
            match ch {
                '0' => {}
                '1' if q < MAX_MODES => bits |= 1 << q,
                _ => return Err(Error::Parse(format!("invalid occupation bitstring {s:?}"))),
            }
        }
        Self::new(bits, s.chars().count())
    }

    #[inline]
    pub fn index(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn n_modes(&self) -> usize {
        self.n_modes as usize
    }

    #[inline]
    pub fn is_occupied(&self, q: usize) -> bool {
        (self.bits >> q) & 1 == 1
    }

    #[inline]
    pub fn electron_count(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Electron count restricted to modes `[lo, hi)`.
    pub fn count_in(&self, lo: usize, hi: usize) -> u32 {
        let width = hi.saturating_sub(lo);
        if width == 0 {
            return 0;
        }
        let mask = if width >= 64 { u64::MAX } else { (1u64 << width) - 1 };
        ((self.bits >> lo) & mask).count_ones()
    }

    pub fn occupied(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_modes()).filter(move |&q| self.is_occupied(q))
    }

    /// Number of modes whose occupation differs.
    #[inline]
    pub fn distance(&self, other: &FockState) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.n_modes())
            .rev()
            .map(|q| if self.is_occupied(q) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self.to_bitstring())
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// All states of `n_modes` modes with `n_alpha` electrons in the first
/// `n_spatial` modes and `n_beta` in the next `n_spatial`, ascending by index.
pub fn enumerate_sector(n_spatial: usize, n_alpha: usize, n_beta: usize) -> Vec<FockState> {
    let n_modes = 2 * n_spatial;
    let alpha = combinations(n_spatial, n_alpha);
    let beta = combinations(n_spatial, n_beta);
    let mut out = Vec::with_capacity(alpha.len() * beta.len());
    for &b in &beta {
        for &a in &alpha {
            out.push(FockState::from_bits_unchecked(a | (b << n_spatial), n_modes));
        }
    }
    out.sort_unstable();
    out
}

/// Bit patterns over `n` positions with exactly `k` ones.
fn combinations(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    (0u64..(1u64 << n)).filter(|b| b.count_ones() as usize == k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitstring_roundtrip_uses_rightmost_as_mode_zero() {
        let s = FockState::from_bitstring("0101").unwrap();
        assert_eq!(s.index(), 0b0101);
        assert!(s.is_occupied(0));
        assert!(!s.is_occupied(1));
        assert_eq!(s.to_bitstring(), "0101");
        assert_eq!(s.n_modes(), 4);
    }

    #[test]
    fn rejects_bits_beyond_register() {
        assert!(FockState::new(0b100, 2).is_err());
        assert!(FockState::from_occupied(&[5], 4).is_err());
    }

    #[test]
    fn sector_enumeration_counts() {
        let sector = enumerate_sector(7, 4, 4);
        assert_eq!(sector.len(), 35 * 35);
        assert!(sector.windows(2).all(|w| w[0] < w[1]));
        assert!(sector.iter().all(|s| s.count_in(0, 7) == 4 && s.count_in(7, 14) == 4));
    }

    #[test]
    fn equality_follows_index() {
        let a = FockState::from_occupied(&[0, 2], 4).unwrap();
        let b = FockState::new(0b101, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.electron_count(), 2);
    }
}
