//! Export an optimized 2-qubit circuit as OpenQASM and read it back.

use toffoli_synth::qasm::{from_qasm, to_qasm};
use toffoli_synth::random::{haar_unitary, seeded_rng};
use toffoli_synth::{synthesize, OptimizerConfig, Stage};

fn main() {
    let u = haar_unitary(2, &mut seeded_rng(1));
    let c = synthesize(&u, Stage::Basic, Some(&OptimizerConfig::default())).unwrap().circuit;
    let text = to_qasm(&c).unwrap();
    print!("{text}");
    let back = from_qasm(&text).unwrap();
    let ok = back.to_unitary().unwrap().equal_up_to_global_phase(&u, 1e-8).unwrap();
    println!("// re-imported program matches: {ok}");
}
