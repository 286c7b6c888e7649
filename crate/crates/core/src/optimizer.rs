//! Drag-based circuit optimizer.
//!
//! Each gate is dragged towards one end of the circuit. On the way it
//! commutes past neighbours, exchanges with them (changing only its own
//! payload), or, if it is antidiagonal, splits a neighbour it controls. The
//! drag is committed only when the gate finally merges with a neighbour and
//! the estimated CNOT cost of the circuit goes down, with gate count and
//! total control count as tie breakers. Every committed drag strictly lowers
//! that measure, so the optimizer terminates and never grows a circuit.

use std::collections::BTreeSet;
use std::fmt;

use crate::circuit::{local_distance, Circuit, Gate};
use crate::matlin::RULE_TOL;
use crate::rewrite::{commutes, exchange_left, exchange_right, helper_exchange, helper_exchange_mirror, merge_pair, Direction};
use crate::synthesis::{default_hooks, Stage};

/// Unchecked runs still verify one committed drag in this many.
const SAMPLE_EVERY: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimizerConfig {
    pub max_sweeps: usize,
    /// Helper exchanges allowed in a single drag.
    pub helper_budget_per_drag: usize,
    /// Verify every committed drag with the local oracle.
    pub checked_mode: bool,
    /// Synthesis stages after which the optimizer runs.
    pub stage_hooks: BTreeSet<Stage>,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig { max_sweeps: 50, helper_budget_per_drag: 1, checked_mode: false, stage_hooks: default_hooks() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OptimizerReport {
    pub sweeps: usize,
    pub merges: usize,
    pub removals: usize,
    pub helper_uses: usize,
    pub verified: usize,
    /// Drags rejected because the oracle disagreed.
    pub rejected: usize,
    pub gates_before: usize,
    pub gates_after: usize,
    /// Estimated CNOTs once every gate is expanded, see [`cnot_cost`].
    pub cnots_before: usize,
    pub cnots_after: usize,
}

impl fmt::Display for OptimizerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sweeps={} merges={} removals={} helpers={} gates {}->{} cnots {}->{}",
            self.sweeps,
            self.merges,
            self.removals,
            self.helper_uses,
            self.gates_before,
            self.gates_after,
            self.cnots_before,
            self.cnots_after
        )
    }
}

/// CNOTs a gate is expected to cost once fully expanded.
pub fn cnot_cost(g: &Gate) -> usize {
    let m = g.n_controls();
    let p = &g.payload;
    if m == 0 || p.is_identity(RULE_TOL) {
        return 0;
    }
    if p.as_scalar(RULE_TOL).is_some() {
        // A phase on the conjunction of the controls: one control fewer.
        return if m == 1 { 0 } else { generic_cost(m - 1) };
    }
    if m == 1 && p.as_scaled_x(RULE_TOL).is_some() {
        return 1;
    }
    generic_cost(m)
}

fn generic_cost(m: usize) -> usize {
    match m {
        0 => 0,
        1 => 2,
        _ => 3 * (1usize << m) - 4,
    }
}

/// Lexicographic cost of a run of gates.
fn measure(gates: &[Gate]) -> (usize, usize, usize) {
    gates.iter().fold((0, 0, 0), |(c, n, k), g| (c + cnot_cost(g), n + 1, k + g.n_controls()))
}

/// A committed drag: replacements keyed by slot index, sorted descending.
struct DragPlan {
    edits: Vec<(usize, Vec<Gate>)>,
    removed: bool,
    helpers: usize,
    /// Slot the merged gate lands on.
    landing: usize,
}

/// Gates live in slots; removed gates leave a `None` until the next
/// compaction so that edits do not shift the rest of the circuit.
type Slots = Vec<Option<Gate>>;

fn step(slots: &Slots, mut j: usize, direction: Direction) -> Option<(usize, Gate)> {
    loop {
        j = match direction {
            Direction::Left if j > 0 => j - 1,
            Direction::Right if j + 1 < slots.len() => j + 1,
            _ => return None,
        };
        if let Some(g) = slots[j] {
            return Some((j, g));
        }
    }
}

fn drag_plan(slots: &Slots, i: usize, direction: Direction, helper_budget: usize) -> Option<DragPlan> {
    let mut cur = slots[i]?;
    let mut helpers: Vec<(usize, Vec<Gate>)> = Vec::new();
    let mut j = i;
    loop {
        let (next, h) = step(slots, j, direction)?;
        j = next;
        let (b1, b2) = match direction {
            Direction::Left => (h, cur),
            Direction::Right => (cur, h),
        };
        if let Some(m) = merge_pair(&b1, &b2) {
            let merged = m.gates();
            let removed = merged.is_empty();
            let mut edits = helpers;
            let grow: usize = edits.iter().map(|(_, r)| r.len() - 1).sum();
            edits.push((i, Vec::new()));
            edits.push((j, merged));
            edits.sort_by_key(|e| std::cmp::Reverse(e.0));
            let landing = match direction {
                Direction::Left => j,
                Direction::Right => j + grow,
            };
            return Some(DragPlan { edits, removed, helpers: grow, landing });
        }
        if commutes(&b1, &b2) {
            continue;
        }
        let exchanged = match direction {
            Direction::Left => exchange_left(&h, &cur).map(|(c, _)| c),
            Direction::Right => exchange_right(&cur, &h).map(|(_, c)| c),
        };
        if let Some(c) = exchanged {
            cur = c;
            continue;
        }
        if helpers.len() < helper_budget {
            if let Some((split, next)) = helper_step(&h, &cur, direction) {
                helpers.push((j, split));
                cur = next;
                continue;
            }
        }
        return None;
    }
}

/// Helper exchange during a drag of `cur` past `h`. Returns the gates that
/// replace `h` and the dragged gate afterwards.
///
/// If `cur` is antidiagonal it passes unchanged and `h` is split in two. If
/// instead `h` is an antidiagonal gate on one of `cur`'s controls, `cur`
/// continues with its payload inverted and leaves behind a copy with that
/// control removed; the two copies commute, so the order is free.
fn helper_step(h: &Gate, cur: &Gate, direction: Direction) -> Option<(Vec<Gate>, Gate)> {
    if cur.controls.is_subset(h.controls) {
        let split = match direction {
            Direction::Left => helper_exchange_mirror(h, cur).map(|(_, mid, extra)| vec![mid, extra]),
            Direction::Right => helper_exchange(cur, h).map(|(extra, mid, _)| vec![extra, mid]),
        };
        if let Some(split) = split {
            return Some((split, *cur));
        }
    }
    if h.controls.is_subset(cur.controls) && cur.controls.contains(h.target) {
        let (extra, mid, _) = match direction {
            Direction::Left => helper_exchange(h, cur)?,
            Direction::Right => {
                let (_, mid, extra) = helper_exchange_mirror(cur, h)?;
                (extra, mid, *h)
            }
        };
        let split = match direction {
            Direction::Left => vec![extra, *h],
            Direction::Right => vec![*h, extra],
        };
        return Some((split, mid));
    }
    None
}

fn apply_plan(slots: &mut Slots, plan: &DragPlan) {
    for (idx, rep) in &plan.edits {
        match rep.len() {
            0 => slots[*idx] = None,
            1 => slots[*idx] = Some(rep[0]),
            _ => {
                slots.splice(*idx..*idx + 1, rep.iter().copied().map(Some));
            }
        }
    }
}

/// Live gates in slots `lo..=hi`, before and after the plan.
fn plan_window(slots: &Slots, plan: &DragPlan) -> (Vec<Gate>, Vec<Gate>) {
    let lo = plan.edits.iter().map(|e| e.0).min().unwrap_or(0);
    let hi = plan.edits.iter().map(|e| e.0).max().unwrap_or(0);
    let before: Vec<Gate> = slots[lo..=hi].iter().flatten().copied().collect();
    let mut after = Vec::with_capacity(before.len() + plan.helpers);
    for k in lo..=hi {
        match plan.edits.iter().find(|e| e.0 == k) {
            Some((_, rep)) => after.extend_from_slice(rep),
            None => after.extend(slots[k]),
        }
    }
    (before, after)
}

struct Optimizer<'a> {
    cfg: &'a OptimizerConfig,
    report: OptimizerReport,
    commits: usize,
}

impl Optimizer<'_> {
    /// Commits the drag of slot `i` if it is worth it; returns the landing
    /// slot.
    fn try_drag(&mut self, slots: &mut Slots, i: usize, direction: Direction) -> Option<usize> {
        let plan = drag_plan(slots, i, direction, self.cfg.helper_budget_per_drag)?;
        let (before, after) = plan_window(slots, &plan);
        if after.len() > before.len() || measure(&after) >= measure(&before) {
            return None;
        }
        self.commits += 1;
        if self.cfg.checked_mode || self.commits % SAMPLE_EVERY == 1 {
            self.report.verified += 1;
            if local_distance(&before, &after) > RULE_TOL {
                self.report.rejected += 1;
                return None;
            }
        }
        self.report.merges += 1;
        self.report.removals += usize::from(plan.removed);
        self.report.helper_uses += plan.helpers;
        apply_plan(slots, &plan);
        Some(plan.landing)
    }

    fn sweep(&mut self, gates: &mut Vec<Gate>) -> bool {
        let mut slots: Slots = gates.iter().copied().map(Some).collect();
        let mut changed = false;
        let mut i = 0;
        while i < slots.len() {
            if slots[i].is_none() {
                i += 1;
                continue;
            }
            if let Some(landing) = self.try_drag(&mut slots, i, Direction::Left) {
                changed = true;
                i = landing;
                continue;
            }
            if self.try_drag(&mut slots, i, Direction::Right).is_some() {
                changed = true;
                continue;
            }
            i += 1;
        }
        *gates = slots.into_iter().flatten().collect();
        changed
    }
}

/// Drags gate `index` towards `direction` until it merges or is blocked.
///
/// Returns the circuit, the position of the merged gate and whether a merge
/// happened. A drag that does not end in a merge leaves the circuit as it
/// was, so a call never increases the gate count.
pub fn drag(c: &Circuit, index: usize, direction: Direction, cfg: &OptimizerConfig) -> (Circuit, usize, bool) {
    let slots: Slots = c.gates().iter().copied().map(Some).collect();
    match drag_plan(&slots, index, direction, cfg.helper_budget_per_drag) {
        Some(plan) => {
            let mut slots = slots;
            apply_plan(&mut slots, &plan);
            let landing = slots[..plan.landing].iter().flatten().count();
            let out = Circuit::from_gates(c.n_qubits(), slots.into_iter().flatten().collect()).expect("same qubits");
            (out, landing, true)
        }
        None => (c.clone(), index, false),
    }
}

/// Optimizes a circuit. The result implements the same unitary exactly
/// (not only up to global phase).
pub fn optimize(c: &Circuit, cfg: &OptimizerConfig) -> (Circuit, OptimizerReport) {
    let mut opt = Optimizer {
        cfg,
        report: OptimizerReport {
            gates_before: c.len(),
            cnots_before: measure(c.gates()).0,
            ..OptimizerReport::default()
        },
        commits: 0,
    };
    let mut gates: Vec<Gate> = c.gates().iter().copied().filter(|g| !g.is_identity(RULE_TOL)).collect();
    while opt.report.sweeps < cfg.max_sweeps {
        opt.report.sweeps += 1;
        if !opt.sweep(&mut gates) {
            break;
        }
    }
    let out = Circuit::from_gates(c.n_qubits(), gates).expect("rewrites keep qubits in range");
    opt.report.gates_after = out.len();
    opt.report.cnots_after = measure(out.gates()).0;
    (out, opt.report)
}
