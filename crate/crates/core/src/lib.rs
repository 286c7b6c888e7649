//! Exact synthesis of multi-qubit unitaries into generalized Toffoli gates,
//! CNOTs and one-qubit gates, with a rule-based circuit optimizer.

pub mod bench;
pub mod circuit;
pub mod cli;
pub mod format;
pub mod matlin;
pub mod optimizer;
pub mod qasm;
pub mod random;
pub mod rewrite;
pub mod synthesis;

pub use circuit::{Circuit, Gate, GateCounts, QubitSet};
pub use matlin::{Mat2, UnitaryMatrix, C64};
pub use optimizer::{optimize, OptimizerConfig, OptimizerReport};
pub use synthesis::{barenco_decompose, synthesize, Stage, Synthesis};
