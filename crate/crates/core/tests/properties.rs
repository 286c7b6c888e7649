use proptest::prelude::*;
use toffoli_synth::circuit::{circuit_to_unitary, classify_pair, locally_equivalent, Circuit, Gate, PairCase, Role};
use toffoli_synth::matlin::{cis, equal_up_to_global_phase, Mat2, C64, EQUIV_TOL, RULE_TOL, UNITARY_TOL};
use toffoli_synth::random::{haar_mat2, haar_unitary, random_diagonal, random_toffoli_circuit, seeded_rng};
use toffoli_synth::rewrite::{exchange_left, exchange_right, merge_pair, solve_exchange, Direction};
use toffoli_synth::synthesis::{reduce_multicontrol, synthesize, Stage};
use toffoli_synth::{optimize, OptimizerConfig};

fn gate(target: usize, controls: &[usize], m: Mat2) -> Gate {
    Gate::new(target, controls.iter().copied(), m).unwrap()
}

fn unitary_of(width: usize, gates: &[Gate]) -> toffoli_synth::UnitaryMatrix {
    circuit_to_unitary(&Circuit::from_gates(width, gates.to_vec()).unwrap()).unwrap()
}

fn swap_holds(b1: &Gate, b2: &Gate, width: usize) -> bool {
    unitary_of(width, &[*b1, *b2]).max_abs_diff(&unitary_of(width, &[*b2, *b1])).unwrap() <= RULE_TOL
}

/// Target and control set on `width` qubits from a bit mask.
fn structure(target: usize, mask: u8, width: usize) -> (usize, Vec<usize>) {
    let t = target % width;
    (t, (0..width).filter(|&q| q != t && mask & (1 << q) != 0).collect())
}

#[test]
fn square_roots_square_back() {
    let mut rng = seeded_rng(21);
    for _ in 0..10_000 {
        let u = haar_mat2(&mut rng);
        let r = u.sqrt();
        assert!((r * r).approx_eq(&u, 1e-9));
    }
}

#[test]
fn commutation_cases_hold_on_the_oracle() {
    let mut rng = seeded_rng(22);
    for _ in 0..100 {
        let a = haar_mat2(&mut rng);
        let b = haar_mat2(&mut rng);
        let d = random_diagonal(&mut rng);
        let e = random_diagonal(&mut rng);
        let z = cis(rng_angle(&mut rng));
        // M1, commuting payloads (a and a^3)
        assert!(swap_holds(&gate(0, &[1], a), &gate(0, &[2], a * a * a), 3));
        // M2
        assert!(swap_holds(&gate(0, &[1], a), &gate(2, &[1], b), 3));
        // M3: b2's target controls b1; b2 diagonal
        assert!(swap_holds(&gate(0, &[1], a), &gate(1, &[2], d), 3));
        // M4: mirror
        assert!(swap_holds(&gate(1, &[2], d), &gate(0, &[1], a), 3));
        // M5: both diagonal, or one of the form diag(z, 1)
        assert!(swap_holds(&gate(0, &[1], d), &gate(1, &[0], e), 2));
        assert!(swap_holds(&gate(0, &[1], Mat2::diag(z, C64::new(1.0, 0.0))), &gate(1, &[0], b), 2));
        // violations fail generically
        assert!(!swap_holds(&gate(0, &[1], a), &gate(0, &[2], b), 3));
        assert!(!swap_holds(&gate(0, &[1], a), &gate(1, &[2], b), 3));
        assert!(!swap_holds(&gate(1, &[2], b), &gate(0, &[1], a), 3));
    }
}

fn rng_angle(rng: &mut toffoli_synth::random::SeededRng) -> f64 {
    use rand::Rng;
    rng.gen_range(-3.0..3.0)
}

#[test]
fn closed_forms_agree_with_the_solver() {
    let mut rng = seeded_rng(23);
    for _ in 0..10_000 {
        let a = haar_mat2(&mut rng);
        let b = haar_mat2(&mut rng);
        let d = random_diagonal(&mut rng);
        let s = Mat2::scalar(cis(rng_angle(&mut rng)));
        let cases = [
            (gate(0, &[1], a), gate(0, &[1, 2], b)),
            (gate(0, &[1], s), gate(1, &[], b)),
            (gate(0, &[1], d), gate(1, &[0], b)),
        ];
        for (b1, b2) in cases {
            let closed = exchange_left(&b1, &b2).unwrap().0.payload;
            let solved = solve_exchange(&b1, &b2, Direction::Left).unwrap();
            assert!(closed.approx_eq(&solved, RULE_TOL));
        }
        let cases = [
            (gate(0, &[1, 2], a), gate(0, &[1], b)),
            (gate(1, &[], a), gate(0, &[1], s)),
            (gate(1, &[0], a), gate(0, &[1], d)),
        ];
        for (b1, b2) in cases {
            let closed = exchange_right(&b1, &b2).unwrap().1.payload;
            let solved = solve_exchange(&b1, &b2, Direction::Right).unwrap();
            assert!(closed.approx_eq(&solved, RULE_TOL));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn products_stay_unitary(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = haar_mat2(&mut seeded_rng(s1));
        let b = haar_mat2(&mut seeded_rng(s2));
        prop_assert!((a * b).is_unitary(10.0 * UNITARY_TOL));
        prop_assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn global_phase_equivalence(seed in any::<u64>(), n in 1usize..4, theta in -7.0f64..7.0, phi in -7.0f64..7.0) {
        let u = haar_unitary(n, &mut seeded_rng(seed));
        let v = u.scale(cis(theta));
        prop_assert!(equal_up_to_global_phase(&u, &u, EQUIV_TOL).unwrap());
        prop_assert!(equal_up_to_global_phase(&u, &v, EQUIV_TOL).unwrap());
        prop_assert!(equal_up_to_global_phase(&v, &u, EQUIV_TOL).unwrap());
        prop_assert!(equal_up_to_global_phase(&v.scale(cis(phi)), &u, EQUIV_TOL).unwrap());
        let w = haar_unitary(n, &mut seeded_rng(seed ^ 1));
        prop_assert_eq!(
            equal_up_to_global_phase(&u, &w, EQUIV_TOL).unwrap(),
            equal_up_to_global_phase(&w, &u, EQUIV_TOL).unwrap()
        );
    }

    #[test]
    fn composition_law(s1 in any::<u64>(), s2 in any::<u64>(), l1 in 0usize..20, l2 in 0usize..20) {
        let c1 = random_toffoli_circuit(3, l1, &mut seeded_rng(s1));
        let c2 = random_toffoli_circuit(3, l2, &mut seeded_rng(s2));
        let joined = circuit_to_unitary(&c1.concat(&c2).unwrap()).unwrap();
        let product = circuit_to_unitary(&c2).unwrap().matmul(&circuit_to_unitary(&c1).unwrap()).unwrap();
        prop_assert!(joined.max_abs_diff(&product).unwrap() <= 1e-10);
    }

    #[test]
    fn roles_partition_the_register(t1 in 0usize..5, m1 in any::<u8>(), t2 in 0usize..5, m2 in any::<u8>()) {
        let (t1, c1) = structure(t1, m1, 5);
        let (t2, c2) = structure(t2, m2, 5);
        let b1 = gate(t1, &c1, Mat2::hadamard());
        let b2 = gate(t2, &c2, Mat2::hadamard());
        let ctx = classify_pair(&b1, &b2);
        for q in 0..5 {
            let (in1, in2) = (c1.contains(&q), c2.contains(&q));
            let want = if q == t1 {
                Role::T1
            } else if q == t2 {
                Role::T2
            } else if in1 && in2 {
                Role::T3
            } else if in1 {
                Role::T4
            } else if in2 {
                Role::T5
            } else {
                Role::T0
            };
            prop_assert_eq!(ctx.role(q), want);
        }
        prop_assert!(ctx.t3.intersection(ctx.t4).is_empty());
        prop_assert!(ctx.t3.intersection(ctx.t5).is_empty());
        prop_assert!(ctx.t4.intersection(ctx.t5).is_empty());
        prop_assert_eq!(ctx.case == PairCase::M1, t1 == t2);
    }

    #[test]
    fn exchange_is_an_involution(t1 in 0usize..4, m1 in any::<u8>(), t2 in 0usize..4, m2 in any::<u8>(), seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let (t1, c1) = structure(t1, m1, 4);
        let (t2, c2) = structure(t2, m2, 4);
        let b1 = gate(t1, &c1, random_diagonal(&mut rng));
        let b2 = gate(t2, &c2, haar_mat2(&mut rng));
        if let Some((b2n, back)) = exchange_left(&b1, &b2) {
            prop_assert!(locally_equivalent(&[b1, b2], &[b2n, back], RULE_TOL));
            if let Some((_, b2r)) = exchange_right(&b2n, &back) {
                prop_assert!(b2r.payload.approx_eq(&b2.payload, RULE_TOL));
            }
        }
    }

    #[test]
    fn merges_never_grow(t in 0usize..3, m in any::<u8>(), seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let (t, c) = structure(t, m, 3);
        let a = haar_mat2(&mut rng);
        let b1 = gate(t, &c, a);
        for b2 in [b1.dagger(), b1.with_payload(haar_mat2(&mut rng))] {
            if let Some(merged) = merge_pair(&b1, &b2) {
                prop_assert!(merged.gates().len() <= 1);
                prop_assert!(locally_equivalent(&[b1, b2], &merged.gates(), RULE_TOL));
            }
        }
    }

    #[test]
    fn multicontrol_reduction_leaves_at_most_one_control(seed in any::<u64>(), n in 2usize..5) {
        let u = haar_unitary(n, &mut seeded_rng(seed));
        let toffoli = synthesize(&u, Stage::Toffoli, None).unwrap().circuit;
        let reduced = reduce_multicontrol(&toffoli);
        prop_assert!(reduced.max_controls() <= 1);
    }
}

#[test]
fn optimizer_preserves_random_circuits() {
    let cfg = OptimizerConfig { checked_mode: true, ..OptimizerConfig::default() };
    for seed in 0..50u64 {
        let n = 3 + (seed % 3) as usize;
        let len = 10 + (seed as usize * 37) % 191;
        let c = random_toffoli_circuit(n, len, &mut seeded_rng(seed));
        let (out, report) = optimize(&c, &cfg);
        assert!(out.len() <= c.len());
        assert_eq!(report.rejected, 0);
        let (a, b) = (circuit_to_unitary(&c).unwrap(), circuit_to_unitary(&out).unwrap());
        assert!(equal_up_to_global_phase(&a, &b, EQUIV_TOL).unwrap(), "seed {seed}");
        let (again, _) = optimize(&c, &cfg);
        assert_eq!(again, out, "seed {seed}: not deterministic");
    }
}

#[test]
fn stages_agree_for_small_widths() {
    for n in 1..=4 {
        let u = haar_unitary(n, &mut seeded_rng(90 + n as u64));
        for stage in Stage::ALL {
            let c = synthesize(&u, stage, None).unwrap().circuit;
            assert!(equal_up_to_global_phase(&circuit_to_unitary(&c).unwrap(), &u, EQUIV_TOL).unwrap());
        }
    }
}
