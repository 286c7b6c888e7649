//! Unitary synthesis in four passes:
//!
//! 1. [`qr_two_level`] factors `U = D⁻¹ · T₁⁻¹ · T₂⁻¹ ⋯ T_K⁻¹` into two-level
//!    unitaries and a diagonal phase matrix.
//! 2. [`two_level_to_toffoli`] / [`diagonal_to_toffoli`] turn each factor into
//!    fully controlled gates `Λ_{n-1}(·)` plus NOT gates, using a Gray-code
//!    path to bring the two basis states next to each other.
//! 3. [`reduce_multicontrol`] rewrites every `Λ_m(U)`, `m ≥ 2`, into singly
//!    controlled gates and CNOTs.
//! 4. [`to_basic_gates`] expands each `Λ_1(V)` into one-qubit gates and at
//!    most two CNOTs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, QubitSet};
use crate::matlin::{Mat2, MatrixError, UnitaryMatrix, C64, EQUIV_TOL, ONE, UNITARY_TOL, ZERO};
use crate::optimizer::{optimize, OptimizerConfig, OptimizerReport};

/// Subdiagonal entries at or below this magnitude count as already zero.
const ELIMINATION_FLOOR: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthesisError {
    #[error("input is not unitary: {0}")]
    NotUnitary(MatrixError),
    #[error("gate {index} has {controls} controls; basic-gate expansion needs at most one")]
    TooManyControls { index: usize, controls: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// A unitary acting only on `span{|q>, |p>}`; `block` is written in the
/// ordered basis `(|q>, |p>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelFactor {
    pub p: usize,
    pub q: usize,
    pub block: Mat2,
}

impl TwoLevelFactor {
    pub fn inverse(&self) -> TwoLevelFactor {
        TwoLevelFactor { block: self.block.dagger(), ..*self }
    }

    pub fn embed(&self, n_qubits: usize) -> UnitaryMatrix {
        let mut m = UnitaryMatrix::identity(n_qubits);
        let b = &self.block.0;
        m.set(self.q, self.q, b[0][0]);
        m.set(self.q, self.p, b[0][1]);
        m.set(self.p, self.q, b[1][0]);
        m.set(self.p, self.p, b[1][1]);
        m
    }
}

/// Diagonal phase matrix `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalFactor {
    pub phases: Vec<C64>,
}

impl DiagonalFactor {
    pub fn identity(n_qubits: usize) -> Self {
        DiagonalFactor { phases: vec![ONE; 1 << n_qubits] }
    }

    pub fn inverse(&self) -> DiagonalFactor {
        DiagonalFactor { phases: self.phases.iter().map(|z| z.conj()).collect() }
    }

    pub fn to_matrix(&self) -> UnitaryMatrix {
        UnitaryMatrix::diagonal(&self.phases).expect("power-of-two length")
    }
}

/// `U = D⁻¹ · T₁⁻¹ · T₂⁻¹ ⋯ T_K⁻¹`, with factors listed as `T₁, T₂, …`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoLevelDecomposition {
    pub n_qubits: usize,
    pub factors: Vec<TwoLevelFactor>,
    pub diagonal: DiagonalFactor,
}

impl TwoLevelDecomposition {
    /// Multiplies the factors back together.
    pub fn reconstruct(&self) -> UnitaryMatrix {
        let mut m = self.diagonal.inverse().to_matrix();
        for f in &self.factors {
            m = m.matmul(&f.inverse().embed(self.n_qubits)).expect("same width");
        }
        m
    }

    /// Step-2 circuit: the factor inverses in application order, then `D⁻¹`.
    pub fn to_toffoli_circuit(&self) -> Circuit {
        let n = self.n_qubits;
        let mut c = Circuit::new(n);
        for f in self.factors.iter().rev() {
            c.extend(&two_level_to_toffoli(&f.inverse(), n)).expect("same width");
        }
        c.extend(&diagonal_to_toffoli(&self.diagonal.inverse(), n)).expect("same width");
        c
    }
}

/// Two-level factorization by Givens-style eliminations.
///
/// Entries below the diagonal are zeroed row by row, `(1,0), (2,0), (2,1),
/// (3,0), …`, each by a rotation on rows `(q, p)` that keeps the phase of the
/// pivot. The leftover diagonal carries generic phases, which become `D`.
pub fn qr_two_level(u: &UnitaryMatrix) -> Result<TwoLevelDecomposition, SynthesisError> {
    u.check_unitary(EQUIV_TOL).map_err(SynthesisError::NotUnitary)?;
    let n = u.n_qubits();
    let dim = u.dim();
    let mut m = u.clone();
    let mut rotations: Vec<TwoLevelFactor> = Vec::new();
    for p in 1..dim {
        for q in 0..p {
            let a = m.get(q, q);
            let b = m.get(p, q);
            if b.norm() <= ELIMINATION_FLOOR {
                m.set(p, q, ZERO);
                continue;
            }
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let keep = if a.norm() > 0.0 { a / a.norm() } else { ONE };
            let g = Mat2::new(keep * a.conj() / r, keep * b.conj() / r, -b / r, a / r);
            m.apply_rows(q, p, &g);
            m.set(p, q, ZERO);
            rotations.push(TwoLevelFactor { p, q, block: g });
        }
    }
    // G_K ⋯ G_1 U = Δ. With D = Δ⁻¹ and T_j = Δ⁻¹ G_j Δ the product
    // T_K ⋯ T_1 D U is the identity, which is the stated form.
    let delta: Vec<C64> = (0..dim).map(|i| m.get(i, i) / m.get(i, i).norm()).collect();
    let factors = rotations
        .into_iter()
        .map(|f| {
            let (dq, dp) = (delta[f.q], delta[f.p]);
            let g = &f.block.0;
            let block = Mat2::new(g[0][0], g[0][1] * dp / dq, g[1][0] * dq / dp, g[1][1]);
            TwoLevelFactor { block, ..f }
        })
        .filter(|f| !f.block.is_identity(UNITARY_TOL))
        .collect();
    let diagonal = DiagonalFactor { phases: delta.iter().map(|z| z.conj()).collect() };
    Ok(TwoLevelDecomposition { n_qubits: n, factors, diagonal })
}

#[inline]
fn basis_bit(n_qubits: usize, q: usize) -> usize {
    1usize << (n_qubits - 1 - q)
}

/// Emits `payload` on `target`, controlled on every other qubit taking the
/// value it has in `pattern`. Zero-valued controls are framed by NOT gates.
fn push_conditioned(c: &mut Circuit, n: usize, target: usize, pattern: usize, payload: Mat2) {
    let controls: QubitSet = (0..n).filter(|&k| k != target).collect();
    let zeros: Vec<usize> = controls.iter().filter(|&k| pattern & basis_bit(n, k) == 0).collect();
    for &k in &zeros {
        c.push(Gate::not(k)).expect("in range");
    }
    c.push(Gate::from_parts(target, controls, payload)).expect("in range");
    for &k in &zeros {
        c.push(Gate::not(k)).expect("in range");
    }
}

/// Realizes a two-level unitary exactly with fully controlled gates.
///
/// The differing bits of `q` and `p` are flipped from the most significant
/// one down, walking `|q>` along a Gray-code path until it differs from `|p>`
/// only in the last differing bit; the block is applied there and the path
/// is undone.
pub fn two_level_to_toffoli(f: &TwoLevelFactor, n_qubits: usize) -> Circuit {
    let n = n_qubits;
    let mut c = Circuit::new(n);
    if f.block.is_identity(UNITARY_TOL) {
        return c;
    }
    let differing: Vec<usize> = (0..n).filter(|&k| (f.p ^ f.q) & basis_bit(n, k) != 0).collect();
    let (&target, path) = differing.split_last().expect("p != q");
    let mut cur = f.q;
    let mut swaps = Vec::with_capacity(path.len());
    for &k in path {
        swaps.push((k, cur));
        cur ^= basis_bit(n, k);
    }
    for &(k, from) in &swaps {
        push_conditioned(&mut c, n, k, from, Mat2::pauli_x());
    }
    let q_is_zero = cur & basis_bit(n, target) == 0;
    let block = if q_is_zero {
        f.block
    } else {
        Mat2::pauli_x() * f.block * Mat2::pauli_x()
    };
    push_conditioned(&mut c, n, target, f.p, block);
    for &(k, from) in swaps.iter().rev() {
        push_conditioned(&mut c, n, k, from, Mat2::pauli_x());
    }
    c
}

/// Realizes a diagonal phase matrix with `2^(n-1)` gates
/// `Λ_{n-1}(diag(d_{2k}, d_{2k+1}))` on the last qubit.
pub fn diagonal_to_toffoli(d: &DiagonalFactor, n_qubits: usize) -> Circuit {
    let n = n_qubits;
    let mut c = Circuit::new(n);
    for k in 0..(1usize << (n - 1)) {
        let (lo, hi) = (d.phases[2 * k], d.phases[2 * k + 1]);
        let payload = Mat2::diag(lo, hi);
        if payload.is_identity(UNITARY_TOL) {
            continue;
        }
        push_conditioned(&mut c, n, n - 1, 2 * k, payload);
    }
    c
}

/// Rewrites every gate with `m ≥ 2` controls into singly controlled gates.
///
/// `Λ_m(U)` becomes `2^m - 1` gates `Λ_1(V^±1)` with `V^(2^(m-1)) = U`,
/// each controlled by one control wire that carries the parity of a control
/// subset, plus `2^m - 2` CNOTs among the controls that walk those parities
/// along a Gray code. Odd subsets get `V`, even subsets `V^†`.
pub fn reduce_multicontrol(c: &Circuit) -> Circuit {
    let mut out = Circuit::new(c.n_qubits());
    for g in c.gates() {
        expand_multicontrol(g, &mut out);
    }
    out
}

fn expand_multicontrol(g: &Gate, out: &mut Circuit) {
    let m = g.n_controls();
    if m < 2 {
        out.push(*g).expect("in range");
        return;
    }
    if g.payload.is_identity(UNITARY_TOL) {
        return;
    }
    let ctls: Vec<usize> = g.controls.iter().collect();
    let v = g.payload.root_pow2(m as u32 - 1);
    let v_dag = v.dagger();
    let mut prev = 0usize;
    for i in 1..(1usize << m) {
        let code = i ^ (i >> 1);
        let lead = usize::BITS as usize - 1 - code.leading_zeros() as usize;
        let changed = (code ^ prev).trailing_zeros() as usize;
        if prev != 0 {
            if changed != lead {
                out.push(Gate::cnot(ctls[changed], ctls[lead])).expect("in range");
            } else {
                for b in (0..lead).filter(|b| code & (1 << b) != 0) {
                    out.push(Gate::cnot(ctls[b], ctls[lead])).expect("in range");
                }
            }
        }
        let payload = if code.count_ones() % 2 == 1 { v } else { v_dag };
        out.push(Gate::from_parts(g.target, QubitSet::single(ctls[lead]), payload)).expect("in range");
        prev = code;
    }
}

/// Expands singly controlled gates into one-qubit gates and CNOTs.
///
/// A generic `Λ_1(V)` with `V = e^{iδ} Rz(γ) Ry(θ) Rz(λ)` becomes
/// `C', CNOT, B', CNOT, A'` on the target (`A'B'C' = I`,
/// `A'XB'XC' = Rz(γ)Ry(θ)Rz(λ)`) and `diag(1, e^{iδ})` on the control.
/// Special cases: identity payloads vanish, `e^{iφ}σx` costs one CNOT and
/// `e^{iφ}I` is a phase on the control. Everything else uses two CNOTs.
pub fn to_basic_gates(c: &Circuit) -> Result<Circuit, SynthesisError> {
    let mut out = Circuit::new(c.n_qubits());
    for (index, g) in c.gates().iter().enumerate() {
        match g.n_controls() {
            0 => {
                if !g.payload.is_identity(UNITARY_TOL) {
                    out.push(*g)?;
                }
            }
            1 => expand_controlled(g, &mut out)?,
            controls => return Err(SynthesisError::TooManyControls { index, controls }),
        }
    }
    Ok(out)
}

fn push_one_qubit(out: &mut Circuit, target: usize, m: Mat2) -> Result<(), CircuitError> {
    if !m.is_identity(UNITARY_TOL) {
        out.push(Gate::single(target, m))?;
    }
    Ok(())
}

fn expand_controlled(g: &Gate, out: &mut Circuit) -> Result<(), CircuitError> {
    let ctrl = g.controls.iter().next().expect("one control");
    let t = g.target;
    let v = g.payload;
    if v.is_identity(UNITARY_TOL) {
        return Ok(());
    }
    if v.approx_eq(&Mat2::pauli_x(), UNITARY_TOL) {
        return out.push(Gate::cnot(ctrl, t));
    }
    if let Some(z) = v.as_scaled_x(UNITARY_TOL) {
        out.push(Gate::cnot(ctrl, t))?;
        return push_one_qubit(out, ctrl, Mat2::diag(ONE, z));
    }
    if let Some(z) = v.as_scalar(UNITARY_TOL) {
        return push_one_qubit(out, ctrl, Mat2::diag(ONE, z));
    }
    let a = v.zyz_angles();
    let a_gate = Mat2::rz(a.gamma) * Mat2::ry(a.theta / 2.0);
    let b_gate = Mat2::ry(-a.theta / 2.0) * Mat2::rz(-(a.gamma + a.lambda) / 2.0);
    let c_gate = Mat2::rz((a.lambda - a.gamma) / 2.0);
    push_one_qubit(out, t, c_gate)?;
    out.push(Gate::cnot(ctrl, t))?;
    push_one_qubit(out, t, b_gate)?;
    out.push(Gate::cnot(ctrl, t))?;
    push_one_qubit(out, t, a_gate)?;
    push_one_qubit(out, ctrl, Mat2::phase(a.delta))
}

/// Pipeline stage at which synthesis stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    /// Each two-level factor expanded on its own.
    TwoLevel,
    /// Fully controlled gates and NOTs for the whole unitary.
    Toffoli,
    /// At most one control per gate.
    Controlled,
    /// One-qubit gates and CNOTs only.
    Basic,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::TwoLevel, Stage::Toffoli, Stage::Controlled, Stage::Basic];

    pub fn name(self) -> &'static str {
        match self {
            Stage::TwoLevel => "two-level",
            Stage::Toffoli => "toffoli",
            Stage::Controlled => "controlled",
            Stage::Basic => "basic",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "two-level" | "twolevel" => Ok(Stage::TwoLevel),
            "toffoli" => Ok(Stage::Toffoli),
            "controlled" => Ok(Stage::Controlled),
            "basic" => Ok(Stage::Basic),
            other => Err(format!("unknown stage `{other}`")),
        }
    }
}

/// Output of [`synthesize`]: the circuit plus one optimizer report per
/// stage hook that ran.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub circuit: Circuit,
    pub optimizer_reports: Vec<(Stage, OptimizerReport)>,
}

/// Runs the passes up to `stop_at`, without optimization.
pub fn barenco_decompose(u: &UnitaryMatrix, stop_at: Stage) -> Result<Circuit, SynthesisError> {
    Ok(synthesize(u, stop_at, None)?.circuit)
}

/// Runs the passes up to `stop_at`. With an optimizer configuration, the
/// optimizer runs after each stage listed in its `stage_hooks`.
pub fn synthesize(
    u: &UnitaryMatrix,
    stop_at: Stage,
    optimizer: Option<&OptimizerConfig>,
) -> Result<Synthesis, SynthesisError> {
    u.check_unitary(EQUIV_TOL).map_err(SynthesisError::NotUnitary)?;
    let n = u.n_qubits();
    let mut reports = Vec::new();
    if n == 1 {
        let m = Mat2::new(u.get(0, 0), u.get(0, 1), u.get(1, 0), u.get(1, 1));
        let mut circuit = Circuit::new(1);
        if !m.is_identity(UNITARY_TOL) {
            circuit.push(Gate::single(0, m))?;
        }
        return Ok(Synthesis { circuit, optimizer_reports: reports });
    }

    let hook = |stage: Stage, c: Circuit, reports: &mut Vec<(Stage, OptimizerReport)>| -> Circuit {
        match optimizer {
            Some(cfg) if cfg.stage_hooks.contains(&stage) => {
                let (out, report) = optimize(&c, cfg);
                reports.push((stage, report));
                out
            }
            _ => c,
        }
    };

    let decomposition = qr_two_level(u)?;
    let circuit = hook(Stage::TwoLevel, decomposition.to_toffoli_circuit(), &mut reports);
    if stop_at == Stage::TwoLevel {
        return Ok(Synthesis { circuit, optimizer_reports: reports });
    }
    let circuit = hook(Stage::Toffoli, circuit, &mut reports);
    if stop_at == Stage::Toffoli {
        return Ok(Synthesis { circuit, optimizer_reports: reports });
    }
    let circuit = hook(Stage::Controlled, reduce_multicontrol(&circuit), &mut reports);
    if stop_at == Stage::Controlled {
        return Ok(Synthesis { circuit, optimizer_reports: reports });
    }
    let circuit = to_basic_gates(&circuit)?;
    let circuit = hook(Stage::Basic, circuit, &mut reports);
    // The optimizer may fuse a one-qubit gate into a CNOT; re-legalize.
    let circuit = if circuit.max_controls() <= 1 && circuit.gates().iter().all(is_basic) {
        circuit
    } else {
        to_basic_gates(&circuit)?
    };
    Ok(Synthesis { circuit, optimizer_reports: reports })
}

fn is_basic(g: &Gate) -> bool {
    g.n_controls() == 0 || g.is_cnot()
}

/// The stages an optimizer runs after by default.
pub fn default_hooks() -> BTreeSet<Stage> {
    [Stage::Toffoli, Stage::Basic].into_iter().collect()
}

/// CNOT count of the unoptimized basic-stage circuit for a generic `n`-qubit
/// unitary, derived from the pass structure above.
pub fn generic_cnot_count(n_qubits: usize) -> usize {
    if n_qubits < 2 {
        return 0;
    }
    let n = n_qubits;
    let dim = 1usize << n;
    let m = n - 1;
    let (cost_generic, cost_x) = if m == 1 { (2, 1) } else { (3 * (1 << m) - 4, 3 * (1 << m) - 4) };
    let mut total = 0;
    for p in 1..dim {
        for q in 0..p {
            let h = (p ^ q).count_ones() as usize;
            total += cost_generic + 2 * (h - 1) * cost_x;
        }
    }
    total + (dim / 2) * cost_generic
}
