//! Rewrite rules for adjacent pairs of generalized Toffoli gates.
//!
//! Every rule takes an ordered pair `(b1, b2)` (`b1` acts first) and keys on
//! structure: which target sits in which control set ([`PairCase`]), which
//! control qubits are exclusive to one gate (`t4`, `t5`), and the shape of
//! the payloads. Each rule can be checked against the compressed brute-force
//! oracle in [`crate::circuit::local_distance`].
//!
//! Exchange-with-modification closed forms, `[b1, b2] -> [b2', b1]`:
//!
//! | structure                                   | constraint      | new payload of `b2`            |
//! |---------------------------------------------|-----------------|--------------------------------|
//! | shared target, `ctrl(b1) ⊆ ctrl(b2)`        | none            | `A† B A`                       |
//! | `tgt(b2) ∈ ctrl(b1)`, `tgt(b1) ∉ ctrl(b2)`  | `A = e^{iφ} I`  | `B` with `B01·e^{iφ}, B10·e^{-iφ}` |
//! | `tgt(b1) ∈ ctrl(b2)`, `tgt(b2) ∉ ctrl(b1)`  | no solution     |                                |
//! | each target controls the other              | `A` diagonal    | `B` with `B01·A11, B10·conj(A11)` |
//!
//! The mirror rules `[b1, b2] -> [b2, b1']` swap the roles and conjugate by
//! `B` instead: `b1' = b2 · b1 · b2†`.

use crate::circuit::{classify_pair, compressed_unitary, local_distance, local_gates_to_unitary, Gate, PairCase};
use crate::matlin::{Mat2, C64, ONE, RULE_TOL, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteKind {
    Commuted,
    ExchangedModified,
    Merged,
    RemovedPair,
    HelperExchanged,
    Blocked,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteOutcome {
    pub kind: RewriteKind,
    pub replacement: Vec<Gate>,
    /// Signed change in gate count.
    pub cost_delta: isize,
}

impl RewriteOutcome {
    fn new(kind: RewriteKind, replacement: Vec<Gate>) -> Self {
        let cost_delta = replacement.len() as isize - 2;
        RewriteOutcome { kind, replacement, cost_delta }
    }
}

/// Result of merging two gates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Merge {
    /// The pair is the identity.
    Removed,
    /// The pair equals one gate.
    Single(Gate),
}

impl Merge {
    pub fn gates(&self) -> Vec<Gate> {
        match self {
            Merge::Removed => Vec::new(),
            Merge::Single(g) => vec![*g],
        }
    }
}

fn is_identity(m: &Mat2) -> bool {
    m.is_identity(RULE_TOL)
}

/// `Some(z)` if `A = diag(z, 1)`.
fn as_lower_phase(m: &Mat2) -> Option<C64> {
    (m.is_diagonal(RULE_TOL) && (m.get(1, 1) - ONE).norm() <= RULE_TOL).then_some(m.get(0, 0))
}

/// Whether `b1` then `b2` equals `b2` then `b1`, decided from structure and
/// payload shape alone.
pub fn commutes(b1: &Gate, b2: &Gate) -> bool {
    let (a, b) = (&b1.payload, &b2.payload);
    if is_identity(a) || is_identity(b) {
        return true;
    }
    match classify_pair(b1, b2).case {
        PairCase::M1 => a.commutes_with(b, RULE_TOL),
        PairCase::M2 => true,
        PairCase::M3 => b.is_diagonal(RULE_TOL),
        PairCase::M4 => a.is_diagonal(RULE_TOL),
        PairCase::M5 => {
            (a.is_diagonal(RULE_TOL) && b.is_diagonal(RULE_TOL))
                || as_lower_phase(a).is_some()
                || as_lower_phase(b).is_some()
        }
    }
}

/// Conjugates the off-diagonal entries of `m` by `diag(1, z)`:
/// `diag(1, z)^† · m · diag(1, z)`.
fn phase_conjugate(m: &Mat2, z: C64) -> Mat2 {
    Mat2::new(m.get(0, 0), m.get(0, 1) * z, m.get(1, 0) * z.conj(), m.get(1, 1))
}

fn exchange_left_closed_form(b1: &Gate, b2: &Gate) -> Option<Option<Mat2>> {
    let (a, b) = (&b1.payload, &b2.payload);
    match classify_pair(b1, b2).case {
        PairCase::M1 => Some(Some(a.dagger() * *b * *a)),
        PairCase::M3 => a.as_scalar(RULE_TOL).map(|z| Some(phase_conjugate(b, z))),
        PairCase::M4 => Some(None),
        PairCase::M5 => a.is_diagonal(RULE_TOL).then(|| Some(phase_conjugate(b, a.get(1, 1)))),
        PairCase::M2 => Some(Some(*b)),
    }
}

fn exchange_right_closed_form(b1: &Gate, b2: &Gate) -> Option<Option<Mat2>> {
    let (a, b) = (&b1.payload, &b2.payload);
    match classify_pair(b1, b2).case {
        PairCase::M1 => Some(Some(*b * *a * b.dagger())),
        PairCase::M3 => Some(None),
        PairCase::M4 => b.as_scalar(RULE_TOL).map(|z| Some(phase_conjugate(a, z.conj()))),
        PairCase::M5 => b.is_diagonal(RULE_TOL).then(|| Some(phase_conjugate(a, b.get(1, 1).conj()))),
        PairCase::M2 => Some(Some(*a)),
    }
}

/// `[b1, b2] -> [b2', b1]`, modifying only the payload of `b2`.
/// Impossible when `b1` has controls outside `b2`'s qubits (`t4 ≠ ∅`).
pub fn exchange_left(b1: &Gate, b2: &Gate) -> Option<(Gate, Gate)> {
    if !classify_pair(b1, b2).t4.is_empty() {
        return None;
    }
    if commutes(b1, b2) {
        return Some((*b2, *b1));
    }
    let payload = match exchange_left_closed_form(b1, b2) {
        Some(closed) => closed?,
        None => solve_exchange(b1, b2, Direction::Left)?,
    };
    Some((b2.with_payload(payload), *b1))
}

/// `[b1, b2] -> [b2, b1']`, modifying only the payload of `b1`.
/// Impossible when `b2` has controls outside `b1`'s qubits (`t5 ≠ ∅`).
pub fn exchange_right(b1: &Gate, b2: &Gate) -> Option<(Gate, Gate)> {
    if !classify_pair(b1, b2).t5.is_empty() {
        return None;
    }
    if commutes(b1, b2) {
        return Some((*b2, *b1));
    }
    let payload = match exchange_right_closed_form(b1, b2) {
        Some(closed) => closed?,
        None => solve_exchange(b1, b2, Direction::Right)?,
    };
    Some((*b2, b1.with_payload(payload)))
}

/// Generic exchange solver. Builds the conjugated operator
/// (`b1†·b2·b1` for `Left`, `b2·b1·b2†` for `Right`) on the compressed
/// register and fits a payload for the moving gate's structure by least
/// squares. Each payload entry occupies disjoint matrix positions with unit
/// coefficient, so the least-squares fit is the mean over those positions.
pub fn solve_exchange(b1: &Gate, b2: &Gate, direction: Direction) -> Option<Mat2> {
    let ctx = classify_pair(b1, b2);
    let sequence = match direction {
        Direction::Left if ctx.t4.is_empty() => [*b1, *b2, b1.dagger()],
        Direction::Right if ctx.t5.is_empty() => [b2.dagger(), *b1, *b2],
        _ => return None,
    };
    let (width, mapped, w) = compressed_unitary(&sequence);
    let shape = mapped[1];
    let t = 1usize << (width - 1 - shape.target);
    let cm = shape.controls.iter().map(|q| 1usize << (width - 1 - q)).fold(0, |a, b| a | b);
    let mut acc = [[ZERO; 2]; 2];
    let mut count = 0.0;
    for i in 0..(1usize << width) {
        if i & t != 0 || i & cm != cm {
            continue;
        }
        let j = i | t;
        acc[0][0] += w.get(i, i);
        acc[0][1] += w.get(i, j);
        acc[1][0] += w.get(j, i);
        acc[1][1] += w.get(j, j);
        count += 1.0;
    }
    let fit = Mat2::new(acc[0][0] / count, acc[0][1] / count, acc[1][0] / count, acc[1][1] / count);
    if !fit.is_unitary(RULE_TOL) {
        return None;
    }
    let model = local_gates_to_unitary(width, &[shape.with_payload(fit)]);
    let residual = model.max_abs_diff(&w).expect("same width");
    (residual < RULE_TOL).then_some(fit)
}

/// Whether the pair multiplies to the identity. Requires `t4 = t5 = ∅`.
pub fn identity_pair(b1: &Gate, b2: &Gate) -> bool {
    let ctx = classify_pair(b1, b2);
    if !ctx.t4.is_empty() || !ctx.t5.is_empty() {
        return false;
    }
    let (a, b) = (&b1.payload, &b2.payload);
    let close = |z: C64, w: C64| (z - w).norm() <= RULE_TOL;
    match ctx.case {
        PairCase::M1 => is_identity(&(*b * *a)),
        PairCase::M2 => match (a.as_scalar(RULE_TOL), b.as_scalar(RULE_TOL)) {
            (Some(x), Some(y)) => close(x * y, ONE),
            _ => false,
        },
        PairCase::M3 => match (a.as_scalar(RULE_TOL), b.as_controlled_phase(RULE_TOL)) {
            (Some(x), Some(y)) => close(x * y, ONE),
            _ => false,
        },
        PairCase::M4 => match (a.as_controlled_phase(RULE_TOL), b.as_scalar(RULE_TOL)) {
            (Some(x), Some(y)) => close(x * y, ONE),
            _ => false,
        },
        PairCase::M5 => match (a.as_controlled_phase(RULE_TOL), b.as_controlled_phase(RULE_TOL)) {
            (Some(x), Some(y)) => close(x * y, ONE),
            _ => false,
        },
    }
}

/// A gate whose operator is a pure phase `z` on the conjunction of `qubits`.
struct PhaseOn {
    qubits: crate::circuit::QubitSet,
    z: C64,
}

fn phase_form(g: &Gate) -> Option<PhaseOn> {
    if let Some(z) = g.payload.as_scalar(RULE_TOL) {
        return Some(PhaseOn { qubits: g.controls, z });
    }
    g.payload
        .as_controlled_phase(RULE_TOL)
        .map(|z| PhaseOn { qubits: g.support(), z })
}

/// Rewrites `phase` as a gate with the same target and controls as `host`,
/// if the qubit sets line up.
fn phase_as_payload(phase: &PhaseOn, host: &Gate) -> Option<Mat2> {
    if phase.qubits == host.controls {
        Some(Mat2::scalar(phase.z))
    } else if phase.qubits == host.support() {
        Some(Mat2::diag(ONE, phase.z))
    } else {
        None
    }
}

fn merge_unverified(b1: &Gate, b2: &Gate) -> Option<Merge> {
    if identity_pair(b1, b2) {
        return Some(Merge::Removed);
    }
    let ctx = classify_pair(b1, b2);
    let merged = if ctx.case == PairCase::M1 && ctx.t4.is_empty() && ctx.t5.is_empty() {
        b2.with_payload(b2.payload * b1.payload)
    } else if let Some(p) = phase_form(b1).and_then(|ph| phase_as_payload(&ph, b2)) {
        b2.with_payload(b2.payload * p)
    } else if let Some(p) = phase_form(b2).and_then(|ph| phase_as_payload(&ph, b1)) {
        b1.with_payload(p * b1.payload)
    } else {
        return None;
    };
    if merged.payload.is_identity(RULE_TOL) {
        Some(Merge::Removed)
    } else {
        Some(Merge::Single(merged))
    }
}

/// Replaces the pair by at most one gate: identity pairs vanish, gates with
/// a shared structure fuse, and a phase-type gate is folded into its
/// neighbour when its qubits match the neighbour's. The result is checked
/// against the local oracle before it is returned.
pub fn merge_pair(b1: &Gate, b2: &Gate) -> Option<Merge> {
    let merged = merge_unverified(b1, b2)?;
    (local_distance(&[*b1, *b2], &merged.gates()) <= RULE_TOL).then_some(merged)
}

/// `[b1, b2] -> [g_extra, g_mid, b1]` for an antidiagonal `b1` whose target
/// `c` controls `b2`. With `B` the payload of `b2`:
/// `g_extra = Λ_{(ctrl(b2) \ {c}) ∪ ctrl(b1)}(B)` and `g_mid = Λ_{ctrl(b2)}(B†)`,
/// both on `b2`'s target. When `b1` has controls outside `b2` (`t4 ≠ ∅`)
/// the identity also needs `B = B†`.
pub fn helper_exchange(b1: &Gate, b2: &Gate) -> Option<(Gate, Gate, Gate)> {
    let (g_extra, g_mid) = helper_gates(b1, b2)?;
    let ok = local_distance(&[*b1, *b2], &[g_extra, g_mid, *b1]) <= RULE_TOL;
    ok.then_some((g_extra, g_mid, *b1))
}

/// Mirror image of [`helper_exchange`]: `[b2, b1] -> [b1, g_mid, g_extra]`
/// with the antidiagonal gate `b1` second.
pub fn helper_exchange_mirror(b2: &Gate, b1: &Gate) -> Option<(Gate, Gate, Gate)> {
    let (g_extra, g_mid) = helper_gates(b1, b2)?;
    let ok = local_distance(&[*b2, *b1], &[*b1, g_mid, g_extra]) <= RULE_TOL;
    ok.then_some((*b1, g_mid, g_extra))
}

fn helper_gates(b1: &Gate, b2: &Gate) -> Option<(Gate, Gate)> {
    let c = b1.target;
    if !b2.controls.contains(c) || b1.controls.contains(b2.target) {
        return None;
    }
    if !b1.payload.is_antidiagonal(RULE_TOL) {
        return None;
    }
    let t4_empty = classify_pair(b1, b2).t4.is_empty();
    if !t4_empty && !b2.payload.is_hermitian(RULE_TOL) {
        return None;
    }
    let extra_controls = b2.controls.without(c).union(b1.controls);
    let g_extra = Gate::from_parts(b2.target, extra_controls, b2.payload);
    let g_mid = b2.dagger();
    Some((g_extra, g_mid))
}

/// Tries the rules in priority order on `[b1, b2]`: merge, commute,
/// exchange with modification of `b2`, exchange with modification of `b1`,
/// then exchange with one additional gate.
pub fn rewrite_pair(b1: &Gate, b2: &Gate) -> RewriteOutcome {
    if let Some(m) = merge_pair(b1, b2) {
        return match m {
            Merge::Removed => RewriteOutcome::new(RewriteKind::RemovedPair, Vec::new()),
            Merge::Single(g) => RewriteOutcome::new(RewriteKind::Merged, vec![g]),
        };
    }
    if commutes(b1, b2) {
        return RewriteOutcome::new(RewriteKind::Commuted, vec![*b2, *b1]);
    }
    if let Some((x, y)) = exchange_left(b1, b2).or_else(|| exchange_right(b1, b2)) {
        return RewriteOutcome::new(RewriteKind::ExchangedModified, vec![x, y]);
    }
    if let Some((x, y, z)) = helper_exchange(b1, b2) {
        return RewriteOutcome::new(RewriteKind::HelperExchanged, vec![x, y, z]);
    }
    RewriteOutcome::new(RewriteKind::Blocked, vec![*b1, *b2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::locally_equivalent;
    use crate::matlin::cis;
    use crate::random::{haar_mat2, random_antidiagonal, random_diagonal, seeded_rng};

    fn g(target: usize, controls: &[usize], m: Mat2) -> Gate {
        Gate::new(target, controls.iter().copied(), m).unwrap()
    }

    fn swapped_equal(b1: &Gate, b2: &Gate) -> bool {
        locally_equivalent(&[*b1, *b2], &[*b2, *b1], RULE_TOL)
    }

    #[test]
    fn commute_examples() {
        let h = Mat2::hadamard();
        assert!(commutes(&g(0, &[2], h), &g(0, &[2], h)));
        // M3: b2's target is a control of b1.
        let b1 = g(0, &[1], h);
        assert!(!commutes(&b1, &g(1, &[], Mat2::pauli_x())));
        assert!(commutes(&b1, &g(1, &[], Mat2::phase(0.7))));
        // M5 with A = diag(e^{ia}, 1).
        let b1 = g(0, &[1], Mat2::diag(cis(0.4), ONE));
        let b2 = g(1, &[0], h);
        assert!(commutes(&b1, &b2));
        assert!(swapped_equal(&b1, &b2));
        // diag(1, e^{ia}) in the same spot does not commute
        let b1 = g(0, &[1], Mat2::phase(0.4));
        assert!(!commutes(&b1, &b2));
        assert!(!swapped_equal(&b1, &b2));
    }

    #[test]
    fn exchange_left_examples() {
        let b1 = g(0, &[1], Mat2::pauli_x());
        let b2 = g(0, &[1], Mat2::pauli_z());
        let (b2n, back) = exchange_left(&b1, &b2).unwrap();
        assert_eq!(back, b1);
        assert!(b2n.payload.approx_eq(&Mat2::pauli_z().scale(C64::new(-1.0, 0.0)), 1e-15));
        assert!(locally_equivalent(&[b1, b2], &[b2n, b1], RULE_TOL));

        // b1 carries a control (2) that b2 lacks
        let b1 = g(0, &[1, 2], Mat2::pauli_x());
        assert!(exchange_left(&b1, &g(0, &[1], Mat2::hadamard())).is_none());

        let (p1, p2) = (0.3, -1.1);
        let mut rng = seeded_rng(1);
        let bm = haar_mat2(&mut rng);
        let b1 = g(0, &[1], Mat2::diag(cis(p1), cis(p2)));
        let b2 = g(1, &[0], bm);
        let (b2n, _) = exchange_left(&b1, &b2).unwrap();
        let expected = Mat2::new(bm.get(0, 0), bm.get(0, 1) * cis(p2), bm.get(1, 0) * cis(-p2), bm.get(1, 1));
        assert!(b2n.payload.approx_eq(&expected, 1e-14));
        assert!(locally_equivalent(&[b1, b2], &[b2n, b1], RULE_TOL));
    }

    #[test]
    fn exchange_right_examples() {
        let b1 = g(0, &[1], Mat2::pauli_z());
        let b2 = g(0, &[1], Mat2::pauli_x());
        let (front, b1n) = exchange_right(&b1, &b2).unwrap();
        assert_eq!(front, b2);
        assert!(b1n.payload.approx_eq(&Mat2::pauli_z().scale(C64::new(-1.0, 0.0)), 1e-15));

        assert!(exchange_right(&g(0, &[1], Mat2::pauli_z()), &g(0, &[1, 2], Mat2::pauli_x())).is_none());

        let (p1, p2) = (0.8, 2.1);
        let am = haar_mat2(&mut seeded_rng(2));
        let b1 = g(0, &[1], am);
        let b2 = g(1, &[0], Mat2::diag(cis(p1), cis(p2)));
        let (_, b1n) = exchange_right(&b1, &b2).unwrap();
        let expected = Mat2::new(am.get(0, 0), am.get(0, 1) * cis(-p2), am.get(1, 0) * cis(p2), am.get(1, 1));
        assert!(b1n.payload.approx_eq(&expected, 1e-14));
        assert!(locally_equivalent(&[b1, b2], &[b2, b1n], RULE_TOL));
    }

    #[test]
    fn solver_matches_closed_forms() {
        let mut rng = seeded_rng(3);
        let a = haar_mat2(&mut rng);
        let b = haar_mat2(&mut rng);
        let b1 = g(0, &[1], a);
        let b2 = g(0, &[1, 2], b);
        let closed = a.dagger() * b * a;
        assert!(solve_exchange(&b1, &b2, Direction::Left).unwrap().approx_eq(&closed, 1e-12));
        // target of b1 controls b2 and A is not diagonal: no solution
        let b1 = g(0, &[], haar_mat2(&mut rng));
        let b2 = g(1, &[0], haar_mat2(&mut rng));
        assert!(solve_exchange(&b1, &b2, Direction::Left).is_none());
        // commuting pair gives the payload back
        let b1 = g(0, &[], a);
        let b2 = g(2, &[1], b);
        assert!(solve_exchange(&b1, &b2, Direction::Left).unwrap().approx_eq(&b, 1e-12));
    }

    #[test]
    fn identity_pair_examples() {
        let a = haar_mat2(&mut seeded_rng(4));
        assert!(identity_pair(&g(0, &[1], a), &g(0, &[1], a.dagger())));
        let phi = 0.9;
        assert!(identity_pair(&g(0, &[1], Mat2::phase(phi)), &g(1, &[0], Mat2::phase(-phi))));
        let h = Mat2::hadamard();
        assert!(identity_pair(&g(0, &[], h), &g(0, &[], h)));
        let zh = Mat2::pauli_z() * h;
        assert!(!identity_pair(&g(0, &[], zh), &g(0, &[], zh)));
        assert!(!locally_equivalent(&[g(0, &[], zh), g(0, &[], zh)], &[], RULE_TOL));
        // M3: A = e^{-iφ} I with t2 in its controls, B = diag(1, e^{iφ})
        let b1 = g(0, &[1], Mat2::scalar(cis(-phi)));
        let b2 = g(1, &[], Mat2::phase(phi));
        assert!(identity_pair(&b1, &b2));
        assert!(locally_equivalent(&[b1, b2], &[], RULE_TOL));
    }

    #[test]
    fn merge_examples() {
        let (t1, t2) = (0.3, 1.4);
        let merged = merge_pair(&g(0, &[1], Mat2::rz(t1)), &g(0, &[1], Mat2::rz(t2))).unwrap();
        match merged {
            Merge::Single(m) => assert!(m.payload.approx_eq(&Mat2::rz(t1 + t2), 1e-14)),
            Merge::Removed => panic!("expected a gate"),
        }
        let a = haar_mat2(&mut seeded_rng(5));
        assert_eq!(merge_pair(&g(0, &[1], a), &g(0, &[1], a.dagger())), Some(Merge::Removed));

        let (al, be) = (0.5, -1.2);
        let b1 = g(0, &[1], Mat2::phase(al));
        let b2 = g(1, &[0], Mat2::phase(be));
        match merge_pair(&b1, &b2).unwrap() {
            Merge::Single(m) => {
                assert_eq!(m.target, 1);
                assert!(m.payload.approx_eq(&Mat2::phase(al + be), 1e-14));
            }
            Merge::Removed => panic!("expected a gate"),
        }
        // generic M5 pair does not merge
        assert!(merge_pair(&g(0, &[1], a), &g(1, &[0], a)).is_none());
    }

    #[test]
    fn helper_examples() {
        // [X_c, CNOT(c -> t)] == [X_t, CNOT, X_c]
        let (ge, gm, b1) = helper_exchange(&Gate::not(0), &Gate::cnot(0, 1)).unwrap();
        assert_eq!(ge, Gate::not(1));
        assert_eq!(gm, Gate::cnot(0, 1));
        assert_eq!(b1, Gate::not(0));

        let b = haar_mat2(&mut seeded_rng(6));
        let b2 = g(2, &[0, 1], b);
        let (ge, gm, _) = helper_exchange(&Gate::not(0), &b2).unwrap();
        assert_eq!(ge.controls.iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(gm.controls, b2.controls);
        assert!(gm.payload.approx_eq(&b.dagger(), 0.0));

        assert!(helper_exchange(&g(0, &[], Mat2::phase(0.2)), &b2).is_none());

        // t4 present: needs a Hermitian payload
        let b1 = g(0, &[3], random_antidiagonal(&mut seeded_rng(7)));
        assert!(helper_exchange(&b1, &g(2, &[0, 1], b)).is_none());
        assert!(helper_exchange(&b1, &g(2, &[0, 1], Mat2::hadamard())).is_some());

        let (x, gm, ge) = helper_exchange_mirror(&b2, &Gate::not(0)).unwrap();
        assert!(locally_equivalent(&[b2, Gate::not(0)], &[x, gm, ge], RULE_TOL));
    }

    #[test]
    fn rewrite_pair_kinds() {
        let a = haar_mat2(&mut seeded_rng(8));
        let d = random_diagonal(&mut seeded_rng(9));
        assert_eq!(rewrite_pair(&g(0, &[], a), &g(0, &[], a.dagger())).kind, RewriteKind::RemovedPair);
        assert_eq!(rewrite_pair(&g(0, &[], a), &g(1, &[], a)).kind, RewriteKind::Commuted);
        let out = rewrite_pair(&g(0, &[], Mat2::pauli_x()), &g(1, &[0], a));
        assert_eq!(out.kind, RewriteKind::HelperExchanged);
        assert_eq!(out.cost_delta, 1);
        assert_eq!(rewrite_pair(&g(0, &[1], d), &g(0, &[1, 2], a)).kind, RewriteKind::ExchangedModified);
        assert_eq!(rewrite_pair(&g(0, &[], a), &g(1, &[0], a)).kind, RewriteKind::Blocked);
    }
}
