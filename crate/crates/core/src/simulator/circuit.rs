//! Gate-level circuits and the CNOT-ladder component for one Pauli rotation.
//!
//! Rotation convention: `R_a(θ) = exp(-iθσ_a/2)`, so `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})`.
//! A Pauli exponential `exp(-iφP)` compiles to a central `RZ(2φ)`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;

use num_complex::Complex64;

use super::statevector::Statevector;
use crate::error::{Error, Result};
use crate::qubit_map::{Pauli, PauliString};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    X(usize),
    H(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn target(&self) -> usize {
        match *self {
            Gate::X(q) | Gate::H(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => q,
            Gate::Cnot { target, .. } => target,
        }
    }

    pub fn control(&self) -> Option<usize> {
        match *self {
            Gate::Cnot { control, .. } => Some(control),
            _ => None,
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rx(_, a) | Gate::Ry(_, a) | Gate::Rz(_, a) => Some(a),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "X",
            Gate::H(_) => "H",
            Gate::Rx(..) => "RX",
            Gate::Ry(..) => "RY",
            Gate::Rz(..) => "RZ",
            Gate::Cnot { .. } => "CNOT",
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        for q in std::iter::once(self.target()).chain(self.control()) {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { index: q, qubits: n_qubits });
            }
        }
        if let Gate::Cnot { control, target } = *self {
            if control == target {
                return Err(Error::InvalidArgument(format!("CNOT control equals target {target}")));
            }
        }
        Ok(())
    }

    fn apply(&self, psi: &mut Statevector) {
        let amps = psi.amplitudes_mut();
        match *self {
            Gate::Cnot { control, target } => {
                let (c, t) = (1usize << control, 1usize << target);
                for i in 0..amps.len() {
                    if i & c != 0 && i & t == 0 {
                        amps.swap(i, i | t);
                    }
                }
            }
            single => {
                let m = single.matrix();
                let bit = 1usize << single.target();
                for i in 0..amps.len() {
                    if i & bit != 0 {
                        continue;
                    }
                    let (a0, a1) = (amps[i], amps[i | bit]);
                    amps[i] = m[0][0] * a0 + m[0][1] * a1;
                    amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
                }
            }
        }
    }

    fn matrix(&self) -> [[Complex64; 2]; 2] {
        let z = Complex64::new(0.0, 0.0);
        let r = |x: f64| Complex64::new(x, 0.0);
        match *self {
            Gate::X(_) => [[z, r(1.0)], [r(1.0), z]],
            Gate::H(_) => [[r(FRAC_1_SQRT_2), r(FRAC_1_SQRT_2)], [r(FRAC_1_SQRT_2), r(-FRAC_1_SQRT_2)]],
            Gate::Rx(_, t) => {
                let (s, c) = (t / 2.0).sin_cos();
                [[r(c), Complex64::new(0.0, -s)], [Complex64::new(0.0, -s), r(c)]]
            }
            Gate::Ry(_, t) => {
                let (s, c) = (t / 2.0).sin_cos();
                [[r(c), r(-s)], [r(s), r(c)]]
            }
            Gate::Rz(_, t) => [[Complex64::from_polar(1.0, -t / 2.0), z], [z, Complex64::from_polar(1.0, t / 2.0)]],
            Gate::Cnot { .. } => unreachable!("two-qubit gate has no 2x2 matrix"),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name(), self.target())?;
        if let Some(c) = self.control() {
            write!(f, " {c}")?;
        }
        if let Some(a) = self.angle() {
            write!(f, " {a:.17e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::QubitMismatch { expected: self.n_qubits, found: other.n_qubits });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cnot { .. })).count()
    }

    /// Header `qubits Q`, then one `GATE target [control] [angle]` per line.
    /// Qubit 0 is the least significant bit of the basis index.
    pub fn to_text(&self) -> String {
        let mut s = format!("qubits {}\n", self.n_qubits);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty circuit file".into()))?;
        let n_qubits = header
            .strip_prefix("qubits")
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad circuit header {header:?}")))?;
        let mut c = Circuit::new(n_qubits);
        for line in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let q = |i: usize| -> Result<usize> {
                f.get(i)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad qubit in {line:?}")))
            };
            let a = |i: usize| -> Result<f64> {
                f.get(i)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad angle in {line:?}")))
            };
            let gate = match f[0] {
                "X" => Gate::X(q(1)?),
                "H" => Gate::H(q(1)?),
                "RX" => Gate::Rx(q(1)?, a(2)?),
                "RY" => Gate::Ry(q(1)?, a(2)?),
                "RZ" => Gate::Rz(q(1)?, a(2)?),
                "CNOT" => Gate::Cnot { target: q(1)?, control: q(2)? },
                other => return Err(Error::Parse(format!("unknown gate {other:?}"))),
            };
            c.push(gate)?;
        }
        Ok(c)
    }
}

/// Applies the gates left to right.
pub fn simulate_circuit(circuit: &Circuit, psi: &Statevector) -> Result<Statevector> {
    if circuit.n_qubits != psi.n_qubits() {
        return Err(Error::QubitMismatch { expected: circuit.n_qubits, found: psi.n_qubits() });
    }
    let mut out = psi.clone();
    for g in &circuit.gates {
        g.validate(circuit.n_qubits)?;
        g.apply(&mut out);
    }
    Ok(out)
}

/// Circuit for `exp(-i·c·angle·P)` where `c·P` is `term`, i.e. one
/// factor of weight `angle` in a Trotter product.
///
/// X letters are rotated into the Z basis with `RY(-π/2)`, Y letters with
/// `RX(π/2)`; a CNOT ladder collects parity on the highest support qubit,
/// which receives `RZ(2·c·angle)`; then everything is undone.
pub fn emit_pauli_circuit(term: &PauliString, angle: f64) -> Result<Circuit> {
    let word = term.word;
    if word.is_identity() {
        return Err(Error::IdentityWord);
    }
    let n = word.n_qubits();
    let support = word.support();
    let mut c = Circuit::new(n);
    let mut basis_in = Vec::new();
    let mut basis_out = Vec::new();
    for &q in &support {
        match word.get(q) {
            Pauli::X => {
                basis_in.push(Gate::Ry(q, -FRAC_PI_2));
                basis_out.push(Gate::Ry(q, FRAC_PI_2));
            }
            Pauli::Y => {
                basis_in.push(Gate::Rx(q, FRAC_PI_2));
                basis_out.push(Gate::Rx(q, -FRAC_PI_2));
            }
            _ => {}
        }
    }
    let ladder: Vec<Gate> = support
        .windows(2)
        .map(|w| Gate::Cnot { control: w[0], target: w[1] })
        .collect();
    for g in basis_in.iter().chain(&ladder) {
        c.push(*g)?;
    }
    c.push(Gate::Rz(*support.last().expect("non-identity word"), 2.0 * term.coefficient * angle))?;
    for g in ladder.iter().rev().chain(&basis_out) {
        c.push(*g)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_is_identity() {
        let psi = Statevector::basis(3, 5).unwrap();
        assert_eq!(simulate_circuit(&Circuit::new(3), &psi).unwrap(), psi);
    }

    #[test]
    fn x_flips() {
        let mut c = Circuit::new(1);
        c.push(Gate::X(0)).unwrap();
        let out = simulate_circuit(&c, &Statevector::zero_state(1).unwrap()).unwrap();
        assert_eq!(out.amplitudes()[1], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn bell_state() {
        let mut c = Circuit::new(2);
        c.push(Gate::H(0)).unwrap();
        c.push(Gate::Cnot { control: 0, target: 1 }).unwrap();
        let out = simulate_circuit(&c, &Statevector::zero_state(2).unwrap()).unwrap();
        let a = out.amplitudes();
        assert!((a[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(a[1].norm() < 1e-15 && a[2].norm() < 1e-15);
        assert!((a[3].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn invalid_gates_rejected() {
        let mut c = Circuit::new(2);
        assert!(c.push(Gate::X(2)).is_err());
        assert!(c.push(Gate::Cnot { control: 1, target: 1 }).is_err());
    }

    #[test]
    fn single_z_is_one_rz() {
        let c = emit_pauli_circuit(&PauliString::parse("IZI", 1.0).unwrap(), 0.3).unwrap();
        assert_eq!(c.gates(), &[Gate::Rz(1, 0.6)]);
    }

    #[test]
    fn identity_word_rejected() {
        assert!(matches!(
            emit_pauli_circuit(&PauliString::parse("II", 1.0).unwrap(), 0.3),
            Err(Error::IdentityWord)
        ));
    }

    #[test]
    fn text_roundtrip() {
        let c = emit_pauli_circuit(&PauliString::parse("XIYZ", 1.0).unwrap(), 0.123).unwrap();
        assert_eq!(Circuit::from_text(&c.to_text()).unwrap(), c);
    }
}
