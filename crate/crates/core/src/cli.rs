//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 input error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bench::{format_table, run_bench};
use crate::circuit::{Circuit, MAX_ORACLE_QUBITS};
use crate::format::{parse_circuit, parse_unitary, write_circuit, write_unitary};
use crate::optimizer::{optimize, OptimizerConfig};
use crate::qasm::to_qasm;
use crate::random::{haar_unitary, random_cnot_circuit, seeded_rng};
use crate::synthesis::{synthesize, to_basic_gates, Stage};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "toffoli-synth", version, about = "Unitary synthesis into CNOTs and one-qubit gates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose a unitary file into a circuit.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "basic")]
        stage: Stage,
        /// Run the optimizer after the toffoli and basic stages.
        #[arg(long)]
        optimize: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Optimize an existing circuit.
    Optimize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Verify every rewrite with the local oracle.
        #[arg(long)]
        checked: bool,
    },
    /// Check a circuit against a unitary up to global phase.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        unitary: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Write a seeded random unitary.
    RandomUnitary {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Build the unitary from a random circuit with exactly this many CNOTs.
        #[arg(long)]
        cnot_budget: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// CNOT counts over seeded random unitaries.
    Bench {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Also run five qubits.
        #[arg(long)]
        include_5q: bool,
    },
    /// Export a basic-gate circuit as OpenQASM 2.0.
    ExportQasm {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// An error reported on stderr with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    parse_circuit(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn is_basic(c: &Circuit) -> bool {
    c.gates().iter().all(|g| g.n_controls() == 0 || g.is_cnot())
}

/// Runs a parsed command, writing its report to stdout.
pub fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Decompose { input, stage, optimize, out } => {
            let text = read(&input)?;
            let u = parse_unitary(&text).map_err(|e| input_error(format!("{}: {e}", input.display())))?;
            let cfg = OptimizerConfig::default();
            let result = synthesize(&u, stage, optimize.then_some(&cfg)).map_err(|e| input_error(e.to_string()))?;
            for (st, report) in &result.optimizer_reports {
                println!("optimize after {st}: {report}");
            }
            println!("{}", result.circuit.counts());
            write(&out, &write_circuit(&result.circuit))?;
            Ok(EXIT_OK)
        }
        Command::Optimize { input, out, checked } => {
            let c = load_circuit(&input)?;
            let cfg = OptimizerConfig { checked_mode: checked, ..OptimizerConfig::default() };
            let (mut optimized, report) = optimize(&c, &cfg);
            if is_basic(&c) && !is_basic(&optimized) {
                optimized = to_basic_gates(&optimized).map_err(|e| input_error(e.to_string()))?;
            }
            println!("{report}");
            println!("{}", optimized.counts());
            if checked && c.n_qubits() <= MAX_ORACLE_QUBITS {
                let (a, b) = (c.to_unitary(), optimized.to_unitary());
                let (a, b) = (a.map_err(|e| input_error(e.to_string()))?, b.map_err(|e| input_error(e.to_string()))?);
                let d = a.phase_aligned_distance(&b).map_err(|e| input_error(e.to_string()))?;
                println!("max deviation {:e}", d.max_deviation);
                if d.max_deviation > crate::matlin::EQUIV_TOL {
                    return Ok(EXIT_VERIFY_FAILED);
                }
            }
            write(&out, &write_circuit(&optimized))?;
            Ok(EXIT_OK)
        }
        Command::Verify { circuit, unitary, tol } => {
            let c = load_circuit(&circuit)?;
            let u = parse_unitary(&read(&unitary)?).map_err(|e| input_error(format!("{}: {e}", unitary.display())))?;
            if c.n_qubits() > MAX_ORACLE_QUBITS {
                return Err(input_error(format!("circuit has {} qubits; verification is limited to {MAX_ORACLE_QUBITS}", c.n_qubits())));
            }
            if c.n_qubits() != u.n_qubits() {
                return Err(input_error(format!("circuit has {} qubits, unitary has {}", c.n_qubits(), u.n_qubits())));
            }
            let cu = c.to_unitary().map_err(|e| input_error(e.to_string()))?;
            let d = cu.phase_aligned_distance(&u).map_err(|e| input_error(e.to_string()))?;
            println!("max deviation {:e}, phase {}", d.max_deviation, d.phase.arg());
            if d.max_deviation <= tol {
                println!("equal up to global phase");
                Ok(EXIT_OK)
            } else {
                println!("NOT equal");
                Ok(EXIT_VERIFY_FAILED)
            }
        }
        Command::RandomUnitary { n, seed, cnot_budget, out } => {
            if n == 0 || n > MAX_ORACLE_QUBITS {
                return Err(input_error(format!("--n must be between 1 and {MAX_ORACLE_QUBITS}")));
            }
            let mut rng = seeded_rng(seed);
            let u = match cnot_budget {
                None => haar_unitary(n, &mut rng),
                Some(_) if n == 1 => return Err(input_error("--cnot-budget needs at least two qubits")),
                Some(k) => random_cnot_circuit(n, k, &mut rng).to_unitary().map_err(|e| input_error(e.to_string()))?,
            };
            write(&out, &write_unitary(&u))?;
            Ok(EXIT_OK)
        }
        Command::Bench { max_n, trials, seed, include_5q } => {
            if !(2..=5).contains(&max_n) {
                return Err(input_error("--max-n must be between 2 and 5"));
            }
            let rows = run_bench(max_n, trials, seed, include_5q).map_err(|e| input_error(e.to_string()))?;
            print!("{}", format_table(&rows));
            for r in &rows {
                eprintln!("n={} wall time {:.3} s", r.n_qubits, r.wall_time_s);
            }
            Ok(EXIT_OK)
        }
        Command::ExportQasm { input, out } => {
            let c = load_circuit(&input)?;
            let text = to_qasm(&c).map_err(|e| input_error(e.to_string()))?;
            write(&out, &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses arguments and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
