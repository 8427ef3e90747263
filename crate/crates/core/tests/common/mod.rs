#![allow(dead_code)]

use std::path::PathBuf;

use cvqe::fermion::{FcidumpHeader, SpatialIntegrals};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixtures_dir().join(name)
}

pub fn h3o_fixture(r: f64) -> PathBuf {
    fixture(&format!("h3o+_r{r:.2}.fcidump"))
}

/// The sixteen bond lengths of the H3O+ fixture set.
pub fn bond_lengths() -> Vec<f64> {
    (0..16).map(|i| 0.5 + 0.1 * i as f64).collect()
}

/// Annihilation operator on `n` modes built straight from its definition
/// `a_p |n⟩ = (-1)^{Σ_{q<p} n_q} |n - e_p⟩`.
pub fn annihilator(p: usize, n: usize) -> DMatrix<f64> {
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        if col >> p & 1 == 1 {
            let sign = if (col & ((1 << p) - 1)).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            m[(col ^ (1 << p), col)] = sign;
        }
    }
    m
}

/// Dense matrix of `a†_{c_k}…a†_{c_1} a_{a_1}…a_{a_k}`.
pub fn dense_interaction(create: &[usize], annihilate: &[usize], n: usize) -> DMatrix<f64> {
    let dim = 1usize << n;
    let mut m = DMatrix::identity(dim, dim);
    for &c in create.iter().rev() {
        m *= annihilator(c, n).transpose();
    }
    for &a in annihilate {
        m *= annihilator(a, n);
    }
    m
}

/// Dense second-quantized Hamiltonian assembled directly from spatial
/// integrals with explicit operator products.
pub fn dense_from_integrals(ints: &SpatialIntegrals) -> DMatrix<f64> {
    let norb = ints.header.norb;
    let n = 2 * norb;
    let dim = 1usize << n;
    let a: Vec<DMatrix<f64>> = (0..n).map(|p| annihilator(p, n)).collect();
    let ad: Vec<DMatrix<f64>> = a.iter().map(|m| m.transpose()).collect();
    let mut h = DMatrix::identity(dim, dim) * ints.constant;
    for s in 0..2 {
        for p in 0..norb {
            for q in 0..norb {
                let v = ints.h1(p, q);
                if v != 0.0 {
                    h += &ad[p + s * norb] * &a[q + s * norb] * v;
                }
            }
        }
    }
    for sg in 0..2 {
        for tu in 0..2 {
            for p in 0..norb {
                for q in 0..norb {
                    for r in 0..norb {
                        for s in 0..norb {
                            let v = ints.eri(p, q, r, s);
                            if v == 0.0 {
                                continue;
                            }
                            let (ps, qs) = (p + sg * norb, q + sg * norb);
                            let (rt, st) = (r + tu * norb, s + tu * norb);
                            h += &ad[ps] * &ad[rt] * &a[st] * &a[qs] * (0.5 * v);
                        }
                    }
                }
            }
        }
    }
    h
}

/// Random real integrals with the full 8-fold permutational symmetry.
pub fn random_integrals(norb: usize, seed: u64) -> SpatialIntegrals {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut one_body = vec![0.0; norb * norb];
    for p in 0..norb {
        for q in 0..=p {
            let v = rng.gen_range(-1.0..1.0);
            one_body[p * norb + q] = v;
            one_body[q * norb + p] = v;
        }
    }
    let idx = |p: usize, q: usize, r: usize, s: usize| ((p * norb + q) * norb + r) * norb + s;
    let mut two_body = vec![f64::NAN; norb.pow(4)];
    for p in 0..norb {
        for q in 0..norb {
            for r in 0..norb {
                for s in 0..norb {
                    if !two_body[idx(p, q, r, s)].is_nan() {
                        continue;
                    }
                    let v = rng.gen_range(-0.5..0.5);
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
                        two_body[idx(a, b, c, d)] = v;
                    }
                }
            }
        }
    }
    SpatialIntegrals {
        header: FcidumpHeader { norb, nelec: norb, ms2: 0 },
        constant: rng.gen_range(-2.0..2.0),
        one_body,
        two_body,
    }
}
