//! Reference arithmetic for the integration tests.
//!
//! Deliberately naive: full `2^n × 2^n` operators built by Kronecker products,
//! bras contracted by explicit index loops, and gate/basis tables written out
//! here rather than taken from the library.

#![allow(dead_code)]

pub mod props;

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use telerotate::statevector::Outcome;

pub type Mat = Vec<Vec<C>>;

pub const fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|k| if r == k { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matvec(m: &Mat, v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dagger(m: &Mat) -> Mat {
    let n = m.len();
    (0..n)
        .map(|r| (0..n).map(|k| m[k][r].conj()).collect())
        .collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|k| (0..n).map(|j| a[r][j] * b[j][k]).sum())
                .collect()
        })
        .collect()
}

pub fn outer(v: &[C]) -> Mat {
    v.iter()
        .map(|a| v.iter().map(|b| a * b.conj()).collect())
        .collect()
}

pub fn pauli_x() -> Mat {
    vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ]
}

pub fn pauli_z() -> Mat {
    vec![
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(-1.0, 0.0)],
    ]
}

/// `iσy` as a real matrix.
pub fn i_sigma_y() -> Mat {
    vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(-1.0, 0.0), c(0.0, 0.0)],
    ]
}

/// `exp(-iθZ/2)` by its power series, so the closed form is not assumed.
pub fn rz_series(theta: f64) -> Mat {
    let mut out = identity(2);
    let mut term = identity(2);
    let gen = pauli_z();
    for k in 1..40 {
        let factor = c(0.0, -theta / 2.0) / k as f64;
        term = matmul(&term, &gen)
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * factor).collect())
            .collect();
        for r in 0..2 {
            for s in 0..2 {
                out[r][s] += term[r][s];
            }
        }
    }
    out
}

/// `op` on qubit `pos` (0 = most significant) of an `n`-qubit register.
pub fn embed(op: &Mat, pos: usize, n: usize) -> Mat {
    let id = identity(2);
    let mut m = vec![vec![c(1.0, 0.0)]];
    for q in 0..n {
        m = kron(&m, if q == pos { op } else { &id });
    }
    m
}

pub fn bell_vector(o: Outcome) -> [C; 4] {
    let h = c(FRAC_1_SQRT_2, 0.0);
    let z = c(0.0, 0.0);
    match o {
        Outcome::PhiPlus => [h, z, z, h],
        Outcome::PhiMinus => [h, z, z, -h],
        Outcome::PsiPlus => [z, h, h, z],
        Outcome::PsiMinus => [z, h, -h, z],
        _ => panic!("not a Bell outcome: {o:?}"),
    }
}

pub fn x_vector(o: Outcome) -> [C; 2] {
    let h = c(FRAC_1_SQRT_2, 0.0);
    match o {
        Outcome::Plus => [h, h],
        Outcome::Minus => [h, -h],
        _ => panic!("not an X outcome: {o:?}"),
    }
}

/// Contracts `⟨bra|` into qubits `(i, j)` of an `n`-qubit vector; the
/// surviving qubits keep their relative order. No renormalization.
pub fn contract_pair(state: &[C], n: usize, i: usize, j: usize, bra: &[C; 4]) -> Vec<C> {
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    let mut out = vec![c(0.0, 0.0); 1 << (n - 2)];
    for (idx, amp) in state.iter().enumerate() {
        let local = (bit(idx, i) << 1) | bit(idx, j);
        let mut rest = 0;
        for q in (0..n).filter(|&q| q != i && q != j) {
            rest = (rest << 1) | bit(idx, q);
        }
        out[rest] += bra[local].conj() * amp;
    }
    out
}

pub fn contract_one(state: &[C], n: usize, i: usize, bra: &[C; 2]) -> Vec<C> {
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    let mut out = vec![c(0.0, 0.0); 1 << (n - 1)];
    for (idx, amp) in state.iter().enumerate() {
        let mut rest = 0;
        for q in (0..n).filter(|&q| q != i) {
            rest = (rest << 1) | bit(idx, q);
        }
        out[rest] += bra[bit(idx, i)].conj() * amp;
    }
    out
}

pub fn norm_sqr(v: &[C]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

pub fn normalize(v: &[C]) -> Vec<C> {
    let n = norm_sqr(v).sqrt();
    v.iter().map(|a| a / n).collect()
}

pub fn max_diff(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn phase_fidelity(a: &[C], b: &[C]) -> f64 {
    let ip: C = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    ip.norm_sqr() / (norm_sqr(a) * norm_sqr(b))
}

/// `|ψ⟩_b ⊗ GHZ_{q1q2q3}` in order `(b, q1, q2, q3)`.
pub fn joint_state(alpha: C, beta: C) -> Vec<C> {
    let s = FRAC_1_SQRT_2;
    let mut v = vec![c(0.0, 0.0); 16];
    v[0b0000] = alpha * s;
    v[0b0111] = alpha * s;
    v[0b1000] = beta * s;
    v[0b1111] = beta * s;
    v
}

/// The target `Rz(θ)|ψ⟩` written out by hand.
pub fn target(alpha: C, beta: C, theta: f64) -> [C; 2] {
    [
        alpha * C::from_polar(1.0, -theta / 2.0),
        beta * C::from_polar(1.0, theta / 2.0),
    ]
}

pub struct OracleBranch {
    pub probability: f64,
    /// Charlie's normalized `q3` before the correction.
    pub pre_correction: Vec<C>,
    /// Charlie's `q3` after the tabulated correction.
    pub corrected: Vec<C>,
}

fn table_correction(mr_a: Outcome, mr_b: Outcome) -> Mat {
    use Outcome::*;
    match (mr_a, mr_b) {
        (Plus, PhiPlus) | (Minus, PhiMinus) => identity(2),
        (Minus, PhiPlus) | (Plus, PhiMinus) => pauli_z(),
        (Plus, PsiPlus) | (Minus, PsiMinus) => pauli_x(),
        (Minus, PsiPlus) | (Plus, PsiMinus) => i_sigma_y(),
        _ => panic!("bad branch"),
    }
}

/// The proposed protocol along one branch, by explicit contraction.
pub fn proposed_branch(
    alpha: C,
    beta: C,
    theta: f64,
    mr_b: Outcome,
    mr_a: Outcome,
) -> OracleBranch {
    let joint = joint_state(alpha, beta);
    // (b, q1, q2, q3) -> (q1, q3)
    let after_bob = contract_pair(&joint, 4, 0, 2, &bell_vector(mr_b));
    let sign = match mr_b {
        Outcome::PhiPlus | Outcome::PhiMinus => 1.0,
        _ => -1.0,
    };
    let rotated = matvec(&embed(&rz_series(sign * theta), 0, 2), &after_bob);
    let q3 = contract_one(&rotated, 2, 0, &x_vector(mr_a));
    let probability = norm_sqr(&q3);
    let pre_correction = normalize(&q3);
    let corrected = matvec(&table_correction(mr_a, mr_b), &pre_correction);
    OracleBranch {
        probability,
        pre_correction,
        corrected,
    }
}

/// Full-operator route: `⟨Π| (P_bell ⊗ I) |Π⟩` with `P` on `(b, q2)`.
pub fn bell_probability_full(alpha: C, beta: C, mr_b: Outcome) -> f64 {
    let v = bell_vector(mr_b);
    // Reorder (b, q1, q2, q3) to (b, q2, q1, q3) with an explicit swap of the middle pair.
    let swap = {
        let mut m = vec![vec![c(0.0, 0.0); 4]; 4];
        m[0][0] = c(1.0, 0.0);
        m[1][2] = c(1.0, 0.0);
        m[2][1] = c(1.0, 0.0);
        m[3][3] = c(1.0, 0.0);
        m
    };
    let s = kron(&kron(&identity(2), &swap), &identity(2));
    let joint = matvec(&s, &joint_state(alpha, beta));
    let p = kron(&outer(&v), &identity(4));
    let pv = matvec(&p, &joint);
    joint
        .iter()
        .zip(&pv)
        .map(|(a, b)| a.conj() * b)
        .sum::<C>()
        .re
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the sphere via normalized Gaussians (Box-Muller, own code).
pub fn random_input(rng: &mut impl Rng) -> (C, C, f64) {
    let mut gauss = || {
        let u1: f64 = rng.random::<f64>().max(1e-300);
        let u2: f64 = rng.random();
        (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
    };
    let a = c(gauss(), gauss());
    let b = c(gauss(), gauss());
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let theta = rng.random::<f64>() * TAU;
    (a / n, b / n, theta)
}

/// Lifts a `2^k`-dimensional gate acting on `positions` (first = most
/// significant local bit) to the full `n`-qubit operator, entry by entry.
pub fn full_operator(gate: &Mat, positions: &[usize], n: usize) -> Mat {
    let dim = 1 << n;
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    let local = |idx: usize| positions.iter().fold(0, |acc, &q| (acc << 1) | bit(idx, q));
    let mask: usize = positions.iter().map(|&q| 1 << (n - 1 - q)).sum();
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for (r, row) in m.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            if r & !mask == k & !mask {
                *entry = gate[local(r)][local(k)];
            }
        }
    }
    m
}

/// `½ Σ |Bell⟩_{b q2} ⊗ (term)_{q1 q3}` over the four tagged terms, laid out
/// in order `(b, q1, q2, q3)`.
pub fn bell_tagged_reconstruction(alpha: C, beta: C) -> Vec<C> {
    let z = c(0.0, 0.0);
    let terms: [(Outcome, [C; 4]); 4] = [
        (Outcome::PhiPlus, [alpha, z, z, beta]),
        (Outcome::PhiMinus, [alpha, z, z, -beta]),
        (Outcome::PsiPlus, [beta, z, z, alpha]),
        (Outcome::PsiMinus, [-beta, z, z, alpha]),
    ];
    let mut out = vec![z; 16];
    for (tag, term) in terms {
        let bell = bell_vector(tag);
        for (bq2, bv) in bell.iter().enumerate() {
            for (q1q3, tv) in term.iter().enumerate() {
                let (b, q2) = (bq2 >> 1, bq2 & 1);
                let (q1, q3) = (q1q3 >> 1, q1q3 & 1);
                out[(b << 3) | (q1 << 2) | (q2 << 1) | q3] += 0.5 * bv * tv;
            }
        }
    }
    out
}
