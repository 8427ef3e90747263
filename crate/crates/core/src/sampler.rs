//! Computational-basis shot sampling with reproducible seeds.
//!
//! Draws use inverse-CDF lookup over the `2^Q` probability vector with a
//! ChaCha8 stream (a counter-based generator), so a `(state, shots, seed)`
//! triple always yields the same counts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fermion::FockState;
use crate::simulator::Statevector;

/// Parameters of the guiding state a sample set was drawn from.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Provenance {
    pub time: f64,
    pub steps: usize,
    pub cutoff: f64,
    pub geometry: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    n_qubits: usize,
    counts: BTreeMap<FockState, u64>,
    shots: u64,
    pub seed: u64,
    pub provenance: Provenance,
}

impl SampleSet {
    pub fn from_counts(
        n_qubits: usize,
        counts: impl IntoIterator<Item = (FockState, u64)>,
        seed: u64,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, c) in counts {
            if s.n_modes() != n_qubits {
                return Err(Error::QubitMismatch { expected: n_qubits, found: s.n_modes() });
            }
            if c > 0 {
                *map.entry(s).or_insert(0) += c;
            }
        }
        let shots = map.values().sum();
        Ok(Self { n_qubits, counts: map, shots, seed, provenance: Provenance::default() })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, state: FockState) -> u64 {
        self.counts.get(&state).copied().unwrap_or(0)
    }

    /// Distinct sampled states, ascending by index.
    pub fn support(&self) -> impl Iterator<Item = FockState> + '_ {
        self.counts.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (FockState, u64)> + '_ {
        self.counts.iter().map(|(s, c)| (*s, *c))
    }

    /// Most frequent state, lowest index on ties.
    pub fn mode(&self) -> Option<FockState> {
        self.counts
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(s, _)| *s)
    }

    /// Entries by descending count, then ascending bitstring.
    pub fn sorted_entries(&self) -> Vec<(FockState, u64)> {
        let mut v: Vec<_> = self.entries().collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        v
    }

    /// Header comments with seed and provenance, then `bitstring count` lines.
    pub fn to_text(&self) -> String {
        let p = &self.provenance;
        let mut s = String::new();
        let _ = writeln!(s, "# qubits={}", self.n_qubits);
        let _ = writeln!(s, "# shots={}", self.shots);
        let _ = writeln!(s, "# seed={}", self.seed);
        let _ = writeln!(s, "# time={}", p.time);
        let _ = writeln!(s, "# steps={}", p.steps);
        let _ = writeln!(s, "# cutoff={}", p.cutoff);
        let _ = writeln!(s, "# geometry={}", p.geometry);
        for (state, c) in self.sorted_entries() {
            let _ = writeln!(s, "{state} {c}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut header: BTreeMap<String, String> = BTreeMap::new();
        let mut counts = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(h) = line.strip_prefix('#') {
                if let Some((k, v)) = h.trim().split_once('=') {
                    header.insert(k.trim().to_string(), v.trim().to_string());
                }
                continue;
            }
            let (b, c) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("expected `bitstring count`, got {line:?}")))?;
            let c: u64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad count in {line:?}")))?;
            counts.push((FockState::from_bitstring(b)?, c));
        }
        let get = |k: &str| header.get(k).cloned().unwrap_or_default();
        let num = |k: &str| -> Result<f64> {
            let v = get(k);
            if v.is_empty() {
                return Ok(0.0);
            }
            v.parse().map_err(|_| Error::Parse(format!("bad header value {k}={v}")))
        };
        let n_qubits = match header.get("qubits") {
            Some(q) => q.parse().map_err(|_| Error::Parse(format!("bad qubit count {q}")))?,
            None => counts.first().map_or(0, |(s, _)| s.n_modes()),
        };
        let seed = get("seed").parse().unwrap_or(0);
        let provenance = Provenance {
            time: num("time")?,
            steps: num("steps")? as usize,
            cutoff: num("cutoff")?,
            geometry: get("geometry"),
        };
        Ok(Self::from_counts(n_qubits, counts, seed)?.with_provenance(provenance))
    }
}

/// Draws `shots` independent computational-basis outcomes from `|ψ(n)|²`.
pub fn sample(psi: &Statevector, shots: u64, seed: u64) -> Result<SampleSet> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let mut cdf = Vec::with_capacity(psi.dim());
    let mut total = 0.0;
    for a in psi.amplitudes() {
        total += a.norm_sqr();
        cdf.push(total);
    }
    if total == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for _ in 0..shots {
        let u: f64 = rng.gen_range(0.0..total);
        // first index whose cumulative weight exceeds u; zero-weight states
        // own an empty interval and are never chosen
        let idx = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
        *counts.entry(idx as u64).or_insert(0) += 1;
    }
    let n = psi.n_qubits();
    SampleSet::from_counts(
        n,
        counts.into_iter().map(|(i, c)| (FockState::from_bits_unchecked(i, n), c)),
        seed,
    )
}

/// Keeps only outcomes with `n_alpha` electrons in the lower half of the
/// register and `n_beta` in the upper half.
pub fn sector_filter(samples: &SampleSet, n_alpha: u32, n_beta: u32) -> Result<SampleSet> {
    let half = samples.n_qubits / 2;
    let kept = samples
        .entries()
        .filter(|(s, _)| s.count_in(0, half) == n_alpha && s.count_in(half, samples.n_qubits) == n_beta);
    let out = SampleSet::from_counts(samples.n_qubits, kept, samples.seed)?
        .with_provenance(samples.provenance.clone());
    if out.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    Ok(out)
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-run seed: the master seed folded with each index through SplitMix64,
/// `s ← mix(s ⊕ mix(index))`.
pub fn derive_seed(master: u64, indices: &[u64]) -> u64 {
    indices.iter().fold(mix64(master), |s, &i| mix64(s ^ mix64(i)))
}
