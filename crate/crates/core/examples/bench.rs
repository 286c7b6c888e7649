//! CNOT-count table over seeded random unitaries.

use toffoli_synth::bench::{format_table, run_bench};

fn main() {
    let include_5q = std::env::args().any(|a| a == "--include-5q");
    let rows = run_bench(5, 10, 7, include_5q).expect("synthesis");
    print!("{}", format_table(&rows));
    for r in &rows {
        println!("n={} took {:.2} s", r.n_qubits, r.wall_time_s);
    }
}
