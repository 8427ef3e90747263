mod common;

use common::random_integrals;
use cvqe::fermion::{enumerate_sector, spin_orbital_hamiltonian, FockState};
use cvqe::qubit_map::{cutoff_filter, jordan_wigner, PauliSum, PauliWord};
use cvqe::sampler::{sample, SampleSet};
use cvqe::simulator::{emit_pauli_circuit, pauli_exponential, Circuit, Statevector};
use cvqe::qubit_map::PauliString;
use cvqe::subspace::{energy_deviation, fci_ground_state, FockVector};
use num_complex::Complex64;
use proptest::prelude::*;

fn word_strategy(max_qubits: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), 1..=max_qubits)
        .prop_map(|v| v.into_iter().collect())
}

fn state_strategy(n: usize) -> impl Strategy<Value = Statevector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("non-zero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| Statevector::normalized(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hamiltonian_is_hermitian_and_number_conserving(norb in 1usize..=3, seed in any::<u64>()) {
        let h = spin_orbital_hamiltonian(&random_integrals(norb, seed)).unwrap();
        let n = 2 * norb;
        for i in 0..(1u64 << n) {
            for j in 0..(1u64 << n) {
                let (a, b) = (FockState::new(i, n).unwrap(), FockState::new(j, n).unwrap());
                let hab = h.matrix_element(a, b);
                prop_assert!((hab - h.matrix_element(b, a)).abs() <= 1e-12);
                let same_sector = a.count_in(0, norb) == b.count_in(0, norb) && a.count_in(norb, n) == b.count_in(norb, n);
                if !same_sector {
                    prop_assert_eq!(hab, 0.0);
                }
            }
        }
    }

    #[test]
    fn cutoff_is_monotone(seed in any::<u64>(), e1 in 0.0f64..0.6, e2 in 0.0f64..0.6) {
        let h = spin_orbital_hamiltonian(&random_integrals(3, seed)).unwrap();
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let (a, b) = (cutoff_filter(&h, lo).unwrap(), cutoff_filter(&h, hi).unwrap());
        prop_assert!(b.terms().len() <= a.terms().len());
        prop_assert!(b.terms().iter().all(|t| t.coefficient().abs() > hi));
        prop_assert_eq!(cutoff_filter(&h, 0.0).unwrap().terms().len(), h.terms().len());
    }

    #[test]
    fn qubit_and_fermion_expectations_agree(seed in any::<u64>(), psi in state_strategy(4)) {
        let h = spin_orbital_hamiltonian(&random_integrals(2, seed)).unwrap();
        let ps = jordan_wigner(&h).unwrap();
        let a = psi.expectation(&h).unwrap();
        let b = psi.pauli_expectation(&ps).unwrap();
        prop_assert!((a - b).abs() <= 1e-10, "{} vs {}", a, b);
    }

    #[test]
    fn pauli_exponential_is_unitary_and_invertible(w in word_strategy(5), phi in -4.0f64..4.0, seed in any::<u64>()) {
        let word: PauliWord = w.parse().unwrap();
        let n = word.n_qubits();
        let psi = Statevector::normalized(
            (0..1u64 << n).map(|i| Complex64::new(((i ^ seed) % 7) as f64 - 3.0, (i % 3) as f64)).collect()
        );
        prop_assume!(psi.is_ok());
        let psi = psi.unwrap();
        let out = pauli_exponential(&psi, &word, phi).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
        let back = pauli_exponential(&out, &word, -phi).unwrap();
        prop_assert!(back.distance(&psi).unwrap() < 1e-12);
    }

    #[test]
    fn pauli_words_square_to_identity(w in word_strategy(8)) {
        let word: PauliWord = w.parse().unwrap();
        let (phase, sq) = word.mul(&word);
        prop_assert!(sq.is_identity());
        prop_assert!((phase - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        prop_assert_eq!(word.to_string(), w);
    }

    #[test]
    fn bitstring_round_trip(bits in any::<u64>(), n in 1usize..=64) {
        let masked = if n == 64 { bits } else { bits & ((1u64 << n) - 1) };
        let s = FockState::new(masked, n).unwrap();
        prop_assert_eq!(FockState::from_bitstring(&s.to_bitstring()).unwrap(), s);
        prop_assert_eq!(s.electron_count(), masked.count_ones());
    }

    #[test]
    fn samples_respect_support_and_shot_count(psi in state_strategy(3), shots in 1u64..2000, seed in any::<u64>()) {
        let s = sample(&psi, shots, seed).unwrap();
        prop_assert_eq!(s.shots(), shots);
        prop_assert_eq!(s.entries().map(|(_, c)| c).sum::<u64>(), shots);
        for state in s.support() {
            prop_assert!(psi.amplitude(state).norm_sqr() > 0.0);
        }
        prop_assert_eq!(&SampleSet::from_text(&s.to_text()).unwrap(), &s);
        prop_assert_eq!(sample(&psi, shots, seed).unwrap(), s);
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>(), w in word_strategy(6), phi in -2.0f64..2.0) {
        let ps = jordan_wigner(&spin_orbital_hamiltonian(&random_integrals(2, seed)).unwrap()).unwrap();
        let back = PauliSum::from_text(&ps.to_text()).unwrap();
        prop_assert_eq!(back.len(), ps.len());
        for (a, b) in back.terms().iter().zip(ps.terms()) {
            prop_assert_eq!(a.word, b.word);
            prop_assert_eq!(a.coefficient, b.coefficient);
        }
        let word: PauliWord = w.parse().unwrap();
        prop_assume!(!word.is_identity());
        let c = emit_pauli_circuit(&PauliString::new(word, 0.7).unwrap(), phi).unwrap();
        prop_assert_eq!(Circuit::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn energy_identity_on_small_sectors(seed in any::<u64>(), coeffs in prop::collection::vec(-1.0f64..1.0, 9)) {
        let ints = random_integrals(3, seed);
        let h = spin_orbital_hamiltonian(&ints).unwrap();
        let meta = cvqe::fermion::SystemMetadata {
            n_modes: 6,
            n_alpha: 1,
            n_beta: 1,
            hf_occupation: FockState::from_occupied(&[0, 3], 6).unwrap(),
            hf_energy: 0.0,
            orbital_energies: vec![0.0; 3],
            bond_length: 1.0,
            reference_fci_energy: None,
        };
        let gt = fci_ground_state(&h, &meta).unwrap();
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let psi = FockVector::new(enumerate_sector(3, 1, 1), coeffs.iter().map(|c| c / norm).collect()).unwrap();
        let d = energy_deviation(&psi, &gt, &h).unwrap();
        prop_assert!((d.direct_gap - d.delta_e).abs() <= 1e-9, "{} vs {}", d.direct_gap, d.delta_e);
        prop_assert!(d.direct_gap >= -1e-10);
    }
}
