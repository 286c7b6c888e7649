//! Generalized Toffoli gates, circuits, and the brute-force simulator used as
//! the reference oracle for every transformation in the crate.
//!
//! Bit order: qubit 0 is the most significant bit of a basis index, so the
//! basis label `|x_0 x_1 ... x_{n-1}>` reads left to right.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::matlin::{Mat2, MatrixError, UnitaryMatrix, C64, ONE, UNITARY_TOL, ZERO};

/// Widest circuit the dense simulator will build a unitary for.
pub const MAX_ORACLE_QUBITS: usize = 12;
/// Widest circuit representable (control sets are 64-bit masks).
pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("target qubit {0} is also listed as a control")]
    TargetIsControl(usize),
    #[error("control qubit {0} listed twice")]
    DuplicateControl(usize),
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("gate payload is not unitary (deviation {0:.3e})")]
    NonUnitaryPayload(f64),
    #[error("state has length {got}, expected {expected}")]
    StateLength { got: usize, expected: usize },
    #[error("refusing to build a dense unitary for {0} qubits (limit {MAX_ORACLE_QUBITS})")]
    TooWideForOracle(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A set of qubit indices stored as a bit mask; iteration is ascending.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitSet(u64);

impl QubitSet {
    pub const fn empty() -> Self {
        QubitSet(0)
    }

    pub const fn from_mask(mask: u64) -> Self {
        QubitSet(mask)
    }

    pub fn single(q: usize) -> Self {
        QubitSet(1u64 << q)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, q: usize) -> bool {
        q < MAX_QUBITS && self.0 & (1u64 << q) != 0
    }

    pub fn insert(&mut self, q: usize) -> bool {
        let fresh = !self.contains(q);
        self.0 |= 1u64 << q;
        fresh
    }

    pub fn with(self, q: usize) -> Self {
        QubitSet(self.0 | (1u64 << q))
    }

    pub fn without(self, q: usize) -> Self {
        QubitSet(self.0 & !(1u64 << q))
    }

    pub fn union(self, other: QubitSet) -> Self {
        QubitSet(self.0 | other.0)
    }

    pub fn intersection(self, other: QubitSet) -> Self {
        QubitSet(self.0 & other.0)
    }

    pub fn difference(self, other: QubitSet) -> Self {
        QubitSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: QubitSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let q = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(q)
        })
    }
}

impl fmt::Debug for QubitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for QubitSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = QubitSet::empty();
        for q in iter {
            s.insert(q);
        }
        s
    }
}

/// `Λ_m(A)`: applies `payload` to `target` iff every control qubit is `|1>`.
/// A gate without controls is an ordinary one-qubit gate.
#[derive(Clone, Copy, PartialEq)]
pub struct Gate {
    pub target: usize,
    pub controls: QubitSet,
    pub payload: Mat2,
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{:?}→{} {:?}", self.controls, self.target, self.payload)
    }
}

impl Gate {
    /// Validated constructor: controls must be distinct and exclude the
    /// target, and the payload must be unitary within [`UNITARY_TOL`].
    pub fn new(
        target: usize,
        controls: impl IntoIterator<Item = usize>,
        payload: Mat2,
    ) -> Result<Gate, CircuitError> {
        let mut set = QubitSet::empty();
        for q in controls {
            if q >= MAX_QUBITS {
                return Err(CircuitError::QubitOutOfRange { qubit: q, n_qubits: MAX_QUBITS });
            }
            if !set.insert(q) {
                return Err(CircuitError::DuplicateControl(q));
            }
        }
        if target >= MAX_QUBITS {
            return Err(CircuitError::QubitOutOfRange { qubit: target, n_qubits: MAX_QUBITS });
        }
        if set.contains(target) {
            return Err(CircuitError::TargetIsControl(target));
        }
        if !payload.is_finite() {
            return Err(CircuitError::NonUnitaryPayload(f64::INFINITY));
        }
        let err = payload.unitarity_error();
        if err > UNITARY_TOL {
            return Err(CircuitError::NonUnitaryPayload(err));
        }
        Ok(Gate { target, controls: set, payload })
    }

    /// Same as [`Gate::new`].
    pub fn controlled(
        controls: impl IntoIterator<Item = usize>,
        target: usize,
        payload: Mat2,
    ) -> Result<Gate, CircuitError> {
        Gate::new(target, controls, payload)
    }

    /// Unchecked constructor for payloads produced by exact algebra on
    /// already-validated gates.
    pub(crate) fn from_parts(target: usize, controls: QubitSet, payload: Mat2) -> Gate {
        debug_assert!(!controls.contains(target));
        Gate { target, controls, payload }
    }

    pub fn single(target: usize, payload: Mat2) -> Gate {
        Gate::from_parts(target, QubitSet::empty(), payload)
    }

    /// `Λ_0(σx)`.
    pub fn not(target: usize) -> Gate {
        Gate::single(target, Mat2::pauli_x())
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        assert_ne!(control, target, "CNOT control equals target");
        Gate::from_parts(target, QubitSet::single(control), Mat2::pauli_x())
    }

    pub fn with_payload(&self, payload: Mat2) -> Gate {
        Gate { payload, ..*self }
    }

    pub fn n_controls(&self) -> usize {
        self.controls.len()
    }

    /// Every qubit the gate touches.
    pub fn support(&self) -> QubitSet {
        self.controls.with(self.target)
    }

    pub fn max_qubit(&self) -> usize {
        self.target.max(self.controls.max().unwrap_or(0))
    }

    pub fn dagger(&self) -> Gate {
        self.with_payload(self.payload.dagger())
    }

    pub fn is_cnot(&self) -> bool {
        self.controls.len() == 1 && self.payload.approx_eq(&Mat2::pauli_x(), UNITARY_TOL)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.payload.is_identity(tol)
    }
}

/// Ordered gate list over `n_qubits`; the first gate in the list acts first.
#[derive(Clone, PartialEq, Default)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl fmt::Debug for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Circuit({} qubits, {} gates)", self.n_qubits, self.gates.len())?;
        for g in &self.gates {
            writeln!(f, "  {g:?}")?;
        }
        Ok(())
    }
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        Circuit { n_qubits, gates: Vec::new() }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }


    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<(), CircuitError> {
        let q = g.max_qubit();
        if q >= self.n_qubits {
            return Err(CircuitError::QubitOutOfRange { qubit: q, n_qubits: self.n_qubits });
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        for g in &other.gates {
            self.push(*g)?;
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        let mut c = self.clone();
        c.extend(other)?;
        Ok(c)
    }

    /// The adjoint circuit: reversed order, daggered payloads.
    pub fn inverse(&self) -> Circuit {
        Circuit { n_qubits: self.n_qubits, gates: self.gates.iter().rev().map(Gate::dagger).collect() }
    }

    pub fn apply(&self, state: &mut [C64]) -> Result<(), CircuitError> {
        for g in &self.gates {
            apply_gate(state, self.n_qubits, g)?;
        }
        Ok(())
    }

    /// Dense unitary of the circuit, built by brute-force simulation.
    pub fn to_unitary(&self) -> Result<UnitaryMatrix, CircuitError> {
        circuit_to_unitary(self)
    }

    pub fn counts(&self) -> GateCounts {
        count_gates(self)
    }

    pub fn max_controls(&self) -> usize {
        self.gates.iter().map(Gate::n_controls).max().unwrap_or(0)
    }
}

#[inline]
fn bit(n_qubits: usize, q: usize) -> usize {
    1usize << (n_qubits - 1 - q)
}

fn control_mask(n_qubits: usize, controls: QubitSet) -> usize {
    controls.iter().map(|q| bit(n_qubits, q)).fold(0, |a, b| a | b)
}

/// Applies a gate to a `2^n` state vector in place.
pub fn apply_gate(state: &mut [C64], n_qubits: usize, g: &Gate) -> Result<(), CircuitError> {
    let dim = 1usize << n_qubits;
    if state.len() != dim {
        return Err(CircuitError::StateLength { got: state.len(), expected: dim });
    }
    if g.max_qubit() >= n_qubits {
        return Err(CircuitError::QubitOutOfRange { qubit: g.max_qubit(), n_qubits });
    }
    let t = bit(n_qubits, g.target);
    let cm = control_mask(n_qubits, g.controls);
    let m = &g.payload.0;
    for i in 0..dim {
        if i & t != 0 || i & cm != cm {
            continue;
        }
        let j = i | t;
        let (a, b) = (state[i], state[j]);
        state[i] = m[0][0] * a + m[0][1] * b;
        state[j] = m[1][0] * a + m[1][1] * b;
    }
    Ok(())
}

/// The reference oracle: column `j` is the circuit applied to `|j>`.
pub fn circuit_to_unitary(c: &Circuit) -> Result<UnitaryMatrix, CircuitError> {
    if c.n_qubits > MAX_ORACLE_QUBITS {
        return Err(CircuitError::TooWideForOracle(c.n_qubits));
    }
    Ok(gates_to_unitary(c.n_qubits, &c.gates))
}

fn gates_to_unitary(n_qubits: usize, gates: &[Gate]) -> UnitaryMatrix {
    let mut u = UnitaryMatrix::identity(n_qubits);
    let dim = 1usize << n_qubits;
    for g in gates {
        let t = bit(n_qubits, g.target);
        let cm = control_mask(n_qubits, g.controls);
        for i in 0..dim {
            if i & t == 0 && i & cm == cm {
                u.apply_rows(i, i | t, &g.payload);
            }
        }
    }
    u
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub total: usize,
    pub cnot_count: usize,
    pub one_qubit_count: usize,
    /// Gate count keyed by number of controls.
    pub by_controls: BTreeMap<usize, usize>,
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gates={} cnot={} one_qubit={}", self.total, self.cnot_count, self.one_qubit_count)?;
        for (m, k) in &self.by_controls {
            write!(f, " Λ{m}:{k}")?;
        }
        Ok(())
    }
}

pub fn count_gates(c: &Circuit) -> GateCounts {
    let mut counts = GateCounts { total: c.len(), ..GateCounts::default() };
    for g in c.gates() {
        *counts.by_controls.entry(g.n_controls()).or_default() += 1;
        if g.n_controls() == 0 {
            counts.one_qubit_count += 1;
        } else if g.is_cnot() {
            counts.cnot_count += 1;
        }
    }
    counts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairCase {
    /// Shared target.
    M1,
    /// Neither target controls the other gate.
    M2,
    /// The second gate's target is a control of the first.
    M3,
    /// The first gate's target is a control of the second.
    M4,
    /// Each target controls the other gate.
    M5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Untouched by both gates.
    T0,
    /// Target of the first gate.
    T1,
    /// Target of the second gate.
    T2,
    /// Control of both gates.
    T3,
    /// Control of the first gate only.
    T4,
    /// Control of the second gate only.
    T5,
}

/// Role assignment for an ordered pair `(b1, b2)` of adjacent gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairContext {
    pub case: PairCase,
    pub t1: usize,
    /// Absent when both gates share a target.
    pub t2: Option<usize>,
    pub t3: QubitSet,
    pub t4: QubitSet,
    pub t5: QubitSet,
}

impl PairContext {
    pub fn role(&self, q: usize) -> Role {
        if q == self.t1 {
            Role::T1
        } else if Some(q) == self.t2 {
            Role::T2
        } else if self.t3.contains(q) {
            Role::T3
        } else if self.t4.contains(q) {
            Role::T4
        } else if self.t5.contains(q) {
            Role::T5
        } else {
            Role::T0
        }
    }

    pub fn roles(&self, n_qubits: usize) -> Vec<Role> {
        (0..n_qubits).map(|q| self.role(q)).collect()
    }
}

pub fn classify_pair(b1: &Gate, b2: &Gate) -> PairContext {
    let (c1, c2) = (b1.controls, b2.controls);
    let t1 = b1.target;
    let t2 = (b2.target != t1).then_some(b2.target);
    let case = match t2 {
        None => PairCase::M1,
        Some(t2) => match (c1.contains(t2), c2.contains(t1)) {
            (false, false) => PairCase::M2,
            (true, false) => PairCase::M3,
            (false, true) => PairCase::M4,
            (true, true) => PairCase::M5,
        },
    };
    PairContext {
        case,
        t1,
        t2,
        t3: c1.intersection(c2),
        t4: c1.difference(c2.with(b2.target)),
        t5: c2.difference(c1.with(t1)),
    }
}

/// Compresses the qubits touched by `gates` onto a small register. Qubits
/// that are never a target and appear in exactly the same control sets act
/// only through their conjunction, so one representative stands for all.
fn compress(gates: &[Gate]) -> (usize, Vec<Gate>) {
    let support = gates.iter().fold(QubitSet::empty(), |s, g| s.union(g.support()));
    let mut classes: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut local: HashMap<usize, usize> = HashMap::new();
    let mut next = 0usize;
    for q in support.iter() {
        let is_target = gates.iter().any(|g| g.target == q);
        if is_target {
            local.insert(q, next);
            next += 1;
            continue;
        }
        let key: Vec<bool> = gates.iter().map(|g| g.controls.contains(q)).collect();
        let idx = *classes.entry(key).or_insert_with(|| {
            next += 1;
            next - 1
        });
        local.insert(q, idx);
    }
    let mapped = gates
        .iter()
        .map(|g| {
            Gate::from_parts(local[&g.target], g.controls.iter().map(|q| local[&q]).collect(), g.payload)
        })
        .collect();
    (next.max(1), mapped)
}

/// Exact (not up-to-phase) unitary distance between two gate sequences,
/// evaluated on the smallest register that distinguishes them.
pub fn local_distance(lhs: &[Gate], rhs: &[Gate]) -> f64 {
    let all: Vec<Gate> = lhs.iter().chain(rhs).copied().collect();
    let (width, mapped) = compress(&all);
    let (l, r) = mapped.split_at(lhs.len());
    let ul = gates_to_unitary(width, l);
    let ur = gates_to_unitary(width, r);
    ul.max_abs_diff(&ur).expect("same width")
}

/// True iff the two sequences implement the same operator within `tol`.
pub fn locally_equivalent(lhs: &[Gate], rhs: &[Gate], tol: f64) -> bool {
    local_distance(lhs, rhs) <= tol
}

/// Dense unitary of a gate list on its compressed register, together with
/// the compressed gates. Used by solvers that need the explicit matrix.
pub(crate) fn compressed_unitary(gates: &[Gate]) -> (usize, Vec<Gate>, UnitaryMatrix) {
    let (width, mapped) = compress(gates);
    let u = gates_to_unitary(width, &mapped);
    (width, mapped, u)
}

pub(crate) fn local_gates_to_unitary(width: usize, gates: &[Gate]) -> UnitaryMatrix {
    gates_to_unitary(width, gates)
}

/// Basis vector `|index>` on `n_qubits`.
pub fn basis_state(n_qubits: usize, index: usize) -> Vec<C64> {
    let mut s = vec![ZERO; 1 << n_qubits];
    s[index] = ONE;
    s
}
