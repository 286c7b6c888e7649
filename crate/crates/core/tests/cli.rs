use std::path::Path;
use std::process::{Command, Output};

use toffoli_synth::format::{parse_circuit, parse_unitary, write_unitary};
use toffoli_synth::matlin::{cis, equal_up_to_global_phase, EQUIV_TOL};
use toffoli_synth::qasm::from_qasm;
use toffoli_synth::UnitaryMatrix;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toffoli-synth")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn cnots(path: &str) -> usize {
    parse_circuit(&std::fs::read_to_string(path).unwrap()).unwrap().counts().cnot_count
}

#[test]
fn decompose_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (u, c, c2) = (p(dir.path(), "U.mat"), p(dir.path(), "c.qc"), p(dir.path(), "c2.qc"));
    for n in 1..=4 {
        let n_arg = n.to_string();
        assert_eq!(code(&["random-unitary", "--n", &n_arg, "--seed", "42", "--out", &u]), 0);
        for optimize in [false, true] {
            let mut args = vec!["decompose", "--in", &u, "--stage", "basic", "--out", &c];
            if optimize {
                args.push("--optimize");
            }
            assert_eq!(code(&args), 0);
            assert_eq!(code(&["verify", "--circuit", &c, "--unitary", &u]), 0, "n={n} optimize={optimize}");
        }
    }
    // n = 4 file is still in place: check the counts and the optimize command
    assert_eq!(code(&["decompose", "--in", &u, "--stage", "basic", "--out", &c]), 0);
    assert_eq!(cnots(&c), 8000);
    assert_eq!(code(&["optimize", "--in", &c, "--out", &c2, "--checked"]), 0);
    assert!(cnots(&c2) < 8000);
    assert_eq!(code(&["verify", "--circuit", &c2, "--unitary", &u, "--tol", "1e-8"]), 0);
}

#[test]
fn two_qubit_counts_in_report() {
    let dir = tempfile::tempdir().unwrap();
    let (u, c) = (p(dir.path(), "U.mat"), p(dir.path(), "c.qc"));
    assert_eq!(code(&["random-unitary", "--n", "2", "--seed", "3", "--out", &u]), 0);
    assert_eq!(code(&["decompose", "--in", &u, "--stage", "basic", "--out", &c]), 0);
    assert_eq!(cnots(&c), 20);
    let out = run(&["decompose", "--in", &u, "--stage", "basic", "--optimize", "--out", &c]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("cnot=10"));
    assert_eq!(cnots(&c), 10);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (u, v, w, c) = (p(dir.path(), "U.mat"), p(dir.path(), "V.mat"), p(dir.path(), "W.mat"), p(dir.path(), "c.qc"));
    code(&["random-unitary", "--n", "2", "--seed", "1", "--out", &u]);
    code(&["random-unitary", "--n", "2", "--seed", "2", "--out", &v]);
    code(&["decompose", "--in", &u, "--stage", "toffoli", "--out", &c]);
    assert_eq!(code(&["verify", "--circuit", &c, "--unitary", &v]), 1);
    let phased: UnitaryMatrix = parse_unitary(&std::fs::read_to_string(&u).unwrap()).unwrap().scale(cis(0.77));
    std::fs::write(&w, write_unitary(&phased)).unwrap();
    assert_eq!(code(&["verify", "--circuit", &c, "--unitary", &w]), 0);
}

#[test]
fn identity_gives_empty_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let (u, c) = (p(dir.path(), "I.mat"), p(dir.path(), "c.qc"));
    std::fs::write(&u, write_unitary(&UnitaryMatrix::identity(3))).unwrap();
    assert_eq!(code(&["decompose", "--in", &u, "--stage", "basic", "--out", &c]), 0);
    assert!(parse_circuit(&std::fs::read_to_string(&c).unwrap()).unwrap().is_empty());
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let (bad, c) = (p(dir.path(), "bad.mat"), p(dir.path(), "c.qc"));
    std::fs::write(&bad, "n 1\n1+0j 0+0j\n0+0j 2+0j\n").unwrap();
    let out = run(&["decompose", "--in", &bad, "--stage", "basic", "--out", &c]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&bad, "n 1\n1+0j 0+0j\n0+0j oops\n").unwrap();
    let out = run(&["decompose", "--in", &bad, "--stage", "basic", "--out", &c]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(code(&["random-unitary", "--n", "0", "--seed", "1", "--out", &c]), 2);
    let wide = p(dir.path(), "wide.qc");
    std::fs::write(&wide, "qubits 13\nx 12\n").unwrap();
    assert_eq!(code(&["verify", "--circuit", &wide, "--unitary", &bad]), 2);
}

#[test]
fn random_unitary_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (p(dir.path(), "a.mat"), p(dir.path(), "b.mat"));
    code(&["random-unitary", "--n", "2", "--seed", "9", "--cnot-budget", "3", "--out", &a]);
    code(&["random-unitary", "--n", "2", "--seed", "9", "--cnot-budget", "3", "--out", &b]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn qasm_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (u, c, q) = (p(dir.path(), "U.mat"), p(dir.path(), "c.qc"), p(dir.path(), "c.qasm"));
    code(&["random-unitary", "--n", "3", "--seed", "5", "--out", &u]);
    code(&["decompose", "--in", &u, "--stage", "basic", "--optimize", "--out", &c]);
    assert_eq!(code(&["export-qasm", "--in", &c, "--out", &q]), 0);
    let back = from_qasm(&std::fs::read_to_string(&q).unwrap()).unwrap();
    let target = parse_unitary(&std::fs::read_to_string(&u).unwrap()).unwrap();
    assert!(equal_up_to_global_phase(&back.to_unitary().unwrap(), &target, EQUIV_TOL).unwrap());

    code(&["decompose", "--in", &u, "--stage", "toffoli", "--out", &c]);
    let out = run(&["export-qasm", "--in", &c, "--out", &q]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--stage basic"));
}

#[test]
fn bench_table_is_reproducible() {
    let a = run(&["bench", "--max-n", "3", "--trials", "3", "--seed", "7"]);
    let b = run(&["bench", "--max-n", "3", "--trials", "3", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8_lossy(&a.stdout);
    assert!(text.lines().any(|l| l.split_whitespace().take(3).collect::<Vec<_>>() == ["2", "20", "10"]));
    assert!(text.contains("576"));
}
