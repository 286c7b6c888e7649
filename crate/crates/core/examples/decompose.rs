//! Decompose a random 3-qubit unitary and show each pipeline stage.

use toffoli_synth::random::{haar_unitary, seeded_rng};
use toffoli_synth::synthesis::qr_two_level;
use toffoli_synth::{barenco_decompose, Stage};

fn main() {
    let u = haar_unitary(3, &mut seeded_rng(42));
    let factors = qr_two_level(&u).expect("unitary input");
    println!("two-level factors: {}", factors.factors.len());
    for stage in Stage::ALL {
        let c = barenco_decompose(&u, stage).expect("unitary input");
        let ok = c.to_unitary().unwrap().equal_up_to_global_phase(&u, 1e-8).unwrap();
        println!("{stage:>10}: {}  (matches input: {ok})", c.counts());
    }
}
