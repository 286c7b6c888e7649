//! CNOT-count benchmark over seeded Haar-random unitaries.

use std::fmt::Write as _;
use std::time::Instant;

use crate::optimizer::OptimizerConfig;
use crate::random::{haar_unitary, seeded_rng};
use crate::synthesis::{synthesize, SynthesisError, Stage};

/// Published reference counts for `n = 2..=5`.
pub const REFERENCE_PLAIN: [usize; 4] = [20, 576, 8000, 91520];
pub const REFERENCE_OPTIMIZED: [usize; 4] = [10, 379, 6278, 76208];
/// Quantum-multiplexor decomposition; reference only, not implemented.
pub const REFERENCE_NQ: [usize; 4] = [3, 21, 105, 465];
/// Cosine-sine decomposition; reference only, not implemented.
pub const REFERENCE_CS: [usize; 4] = [4, 26, 118, 494];

/// Lower bound `(4^n - 3n - 1) / 4` on CNOTs for a generic `n`-qubit unitary.
pub fn cnot_lower_bound(n_qubits: usize) -> usize {
    let n = n_qubits;
    ((1usize << (2 * n)) - 3 * n - 1).div_ceil(4)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n_qubits: usize,
    pub cnot_plain: usize,
    pub cnot_optimized: usize,
    pub trials: usize,
    /// Every trial produced the same pair of counts.
    pub all_trials_equal: bool,
    pub wall_time_s: f64,
}

/// Seed of trial `t` for width `n`.
pub fn trial_seed(seed: u64, n_qubits: usize, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((n_qubits as u64) << 32) ^ trial as u64
}

/// CNOT counts `(plain, optimized)` for one unitary.
pub fn trial_counts(n_qubits: usize, seed: u64, cfg: &OptimizerConfig) -> Result<(usize, usize), SynthesisError> {
    let u = haar_unitary(n_qubits, &mut seeded_rng(seed));
    let plain = synthesize(&u, Stage::Basic, None)?.circuit.counts().cnot_count;
    let optimized = synthesize(&u, Stage::Basic, Some(cfg))?.circuit.counts().cnot_count;
    Ok((plain, optimized))
}

/// Runs `trials` unitaries for one width, spreading trials over threads.
pub fn bench_row(n_qubits: usize, trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<BenchRow, SynthesisError> {
    let start = Instant::now();
    let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(trials.max(1));
    let results: Vec<Result<(usize, usize), SynthesisError>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                s.spawn(move || {
                    (w..trials)
                        .step_by(threads)
                        .map(|t| (t, trial_counts(n_qubits, trial_seed(seed, n_qubits, t), cfg)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let mut all: Vec<_> = handles.into_iter().flat_map(|h| h.join().expect("bench worker panicked")).collect();
        all.sort_by_key(|(t, _)| *t);
        all.into_iter().map(|(_, r)| r).collect()
    });
    let counts = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let first = counts.first().copied().unwrap_or((0, 0));
    Ok(BenchRow {
        n_qubits,
        cnot_plain: first.0,
        cnot_optimized: first.1,
        trials,
        all_trials_equal: counts.iter().all(|&c| c == first),
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Rows for `n = 2..=max_n`; width 5 only when `include_5q` is set.
pub fn run_bench(max_n: usize, trials: usize, seed: u64, include_5q: bool) -> Result<Vec<BenchRow>, SynthesisError> {
    let cfg = OptimizerConfig::default();
    let top = if include_5q { max_n.min(5) } else { max_n.min(4) };
    (2..=top).map(|n| bench_row(n, trials, seed, &cfg)).collect()
}

fn reference(table: &[usize; 4], n: usize) -> String {
    n.checked_sub(2).and_then(|i| table.get(i)).map_or("-".into(), |v| v.to_string())
}

/// Table without timings, so output is identical between runs.
pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>2} {:>8} {:>9} {:>8} {:>9} {:>6} {:>6} {:>6} {:>6}",
        "n", "plain", "optimized", "ref", "ref-opt", "NQ", "CS", "trials", "equal"
    )
    .unwrap();
    for r in rows {
        writeln!(
            out,
            "{:>2} {:>8} {:>9} {:>8} {:>9} {:>6} {:>6} {:>6} {:>6}",
            r.n_qubits,
            r.cnot_plain,
            r.cnot_optimized,
            reference(&REFERENCE_PLAIN, r.n_qubits),
            reference(&REFERENCE_OPTIMIZED, r.n_qubits),
            reference(&REFERENCE_NQ, r.n_qubits),
            reference(&REFERENCE_CS, r.n_qubits),
            r.trials,
            r.all_trials_equal
        )
        .unwrap();
    }
    out
}
