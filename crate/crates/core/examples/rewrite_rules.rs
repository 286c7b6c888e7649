//! The pair rewrite rules on small hand-built examples.

use toffoli_synth::circuit::{classify_pair, locally_equivalent};
use toffoli_synth::matlin::RULE_TOL;
use toffoli_synth::rewrite::{commutes, exchange_left, exchange_right, helper_exchange, merge_pair};
use toffoli_synth::{Gate, Mat2};

fn main() {
    let x_on_1 = Gate::new(0, [1], Mat2::pauli_x()).unwrap();
    let z_on_1 = Gate::new(0, [1], Mat2::pauli_z()).unwrap();
    println!("case of [CX, CZ] on one target: {:?}", classify_pair(&x_on_1, &z_on_1).case);
    println!("commute: {}", commutes(&x_on_1, &z_on_1));

    let (moved, _) = exchange_left(&x_on_1, &z_on_1).unwrap();
    println!("exchange_left gives payload {:?}", moved.payload);
    let (_, moved) = exchange_right(&z_on_1, &x_on_1).unwrap();
    println!("exchange_right gives payload {:?}", moved.payload);

    let a = Gate::new(1, [0], Mat2::rz(0.3)).unwrap();
    let b = Gate::new(1, [0], Mat2::rz(-0.3)).unwrap();
    println!("merge of Rz(0.3), Rz(-0.3): {:?}", merge_pair(&a, &b));

    let (x, cnot) = (Gate::not(0), Gate::cnot(0, 1));
    let (g1, g2, g3) = helper_exchange(&x, &cnot).unwrap();
    println!("[X0, CNOT] -> [{g1:?}, {g2:?}, {g3:?}]");
    println!("oracle agrees: {}", locally_equivalent(&[x, cnot], &[g1, g2, g3], RULE_TOL));
}
