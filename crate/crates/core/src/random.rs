//! Seeded random unitaries and circuits.
//!
//! Haar-random matrices come from a QR factorization (modified Gram-Schmidt)
//! of a complex Gaussian matrix; Gram-Schmidt already yields an `R` with a
//! positive real diagonal, which is the normalization that makes `Q` Haar.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circuit::{Circuit, Gate};
use crate::matlin::{Mat2, UnitaryMatrix, C64, ZERO};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Haar-random `2^n x 2^n` unitary.
pub fn haar_unitary<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> UnitaryMatrix {
    let dim = 1usize << n_qubits;
    // columns[c][r]
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|_| (0..dim).map(|_| gaussian(rng)).collect()).collect();
    for c in 0..dim {
        for prev in 0..c {
            let proj: C64 = (0..dim).map(|r| cols[prev][r].conj() * cols[c][r]).sum();
            for r in 0..dim {
                let v = cols[prev][r];
                cols[c][r] -= proj * v;
            }
        }
        let norm = cols[c].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[c].iter_mut() {
            *z /= norm;
        }
    }
    let mut u = UnitaryMatrix::zeros(n_qubits);
    for (c, col) in cols.iter().enumerate() {
        for (r, &z) in col.iter().enumerate() {
            u.set(r, c, z);
        }
    }
    u
}

/// Haar-random one-qubit unitary.
pub fn haar_mat2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let u = haar_unitary(1, rng);
    Mat2::new(u.get(0, 0), u.get(0, 1), u.get(1, 0), u.get(1, 1))
}

/// Random `diag(e^{ia}, e^{ib})`.
pub fn random_diagonal<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let a: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    let b: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    Mat2::diag(crate::matlin::cis(a), crate::matlin::cis(b))
}

/// Random `e^{ia} * antidiag(e^{ib}, e^{-ib})`, a unitary with zero diagonal.
pub fn random_antidiagonal<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let a: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    let b: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    Mat2::new(ZERO, crate::matlin::cis(a + b), crate::matlin::cis(a - b), ZERO)
}

/// Random unit-modulus scalar.
pub fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    crate::matlin::cis(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}

/// A circuit with exactly `cnots` CNOTs at random positions, each layer
/// framed by Haar-random one-qubit gates on every wire.
pub fn random_cnot_circuit<R: Rng + ?Sized>(n_qubits: usize, cnots: usize, rng: &mut R) -> Circuit {
    let mut c = Circuit::new(n_qubits);
    let layer = |c: &mut Circuit, rng: &mut R| {
        for q in 0..n_qubits {
            c.push(Gate::single(q, haar_mat2(rng))).expect("qubit in range");
        }
    };
    layer(&mut c, rng);
    let wires: Vec<usize> = (0..n_qubits).collect();
    for _ in 0..cnots {
        let pick: Vec<usize> = wires.choose_multiple(rng, 2).copied().collect();
        c.push(Gate::cnot(pick[0], pick[1])).expect("qubits in range");
        layer(&mut c, rng);
    }
    c
}

/// A random circuit mixing uncontrolled, singly- and doubly-controlled gates.
/// Payloads are drawn from generic, diagonal, antidiagonal and Pauli-X
/// families so that rewrite rules have something to fire on.
pub fn random_toffoli_circuit<R: Rng + ?Sized>(n_qubits: usize, len: usize, rng: &mut R) -> Circuit {
    let mut c = Circuit::new(n_qubits);
    let wires: Vec<usize> = (0..n_qubits).collect();
    for _ in 0..len {
        let max_ctrl = 2.min(n_qubits - 1);
        let m = rng.gen_range(0..=max_ctrl);
        let pick: Vec<usize> = wires.choose_multiple(rng, m + 1).copied().collect();
        let payload = match rng.gen_range(0..4) {
            0 => haar_mat2(rng),
            1 => random_diagonal(rng),
            2 => random_antidiagonal(rng),
            _ => Mat2::pauli_x(),
        };
        c.push(Gate::controlled(pick[1..].iter().copied(), pick[0], payload).expect("valid gate"))
            .expect("qubits in range");
    }
    c
}
