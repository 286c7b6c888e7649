//! Random unitaries with a known CNOT upper bound, and what the pipeline
//! makes of them.

use toffoli_synth::format::write_unitary;
use toffoli_synth::random::{random_cnot_circuit, seeded_rng};
use toffoli_synth::{synthesize, OptimizerConfig, Stage};

fn main() {
    let cfg = OptimizerConfig::default();
    for budget in [0, 1, 3, 6] {
        let source = random_cnot_circuit(2, budget, &mut seeded_rng(budget as u64));
        let u = source.to_unitary().unwrap();
        let out = synthesize(&u, Stage::Basic, Some(&cfg)).unwrap().circuit;
        println!("built with {budget} CNOTs -> synthesized with {}", out.counts().cnot_count);
    }
    let u = random_cnot_circuit(2, 3, &mut seeded_rng(9)).to_unitary().unwrap();
    print!("{}", write_unitary(&u));
}
