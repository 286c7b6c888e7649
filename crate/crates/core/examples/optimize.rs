//! Run the optimizer inside the pipeline and compare CNOT counts.

use toffoli_synth::random::{haar_unitary, seeded_rng};
use toffoli_synth::{synthesize, OptimizerConfig, Stage};

fn main() {
    let cfg = OptimizerConfig::default();
    for n in 2..=4 {
        let u = haar_unitary(n, &mut seeded_rng(n as u64));
        let plain = synthesize(&u, Stage::Basic, None).unwrap().circuit;
        let opt = synthesize(&u, Stage::Basic, Some(&cfg)).unwrap();
        println!("n={n}: {} -> {} CNOTs", plain.counts().cnot_count, opt.circuit.counts().cnot_count);
        for (stage, report) in &opt.optimizer_reports {
            println!("    after {stage}: {report}");
        }
    }
}
