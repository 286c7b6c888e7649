//! OpenQASM 2.0 export of basic-gate circuits.
//!
//! One-qubit gates become `u3(θ, φ, λ)`. Since `u3` fixes the global phase
//! differently from the payload, each line carries the dropped phase as a
//! trailing `// phase <p>` comment, and the header records their sum. The
//! importer reads the comments back, so a round trip preserves payloads
//! exactly up to rounding.

use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::format::ParseError;
use crate::matlin::{cis, Mat2, RULE_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QasmError {
    #[error("gate {index} has {controls} controls; decompose with --stage basic first")]
    TooManyControls { index: usize, controls: usize },
    #[error("gate {index} is a controlled gate other than CNOT; decompose with --stage basic first")]
    NotCnot { index: usize },
}

/// `u3(θ, φ, λ)` as defined in `qelib1.inc`.
pub fn u3(theta: f64, phi: f64, lambda: f64) -> Mat2 {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    Mat2::new(
        c.into(),
        -cis(lambda) * s,
        cis(phi) * s,
        cis(phi + lambda) * c,
    )
}

/// Angles `(θ, φ, λ, phase)` with `m = e^{i·phase} · u3(θ, φ, λ)`.
pub fn u3_angles(m: &Mat2) -> (f64, f64, f64, f64) {
    let z = m.zyz_angles();
    let phase = z.delta - (z.gamma + z.lambda) / 2.0;
    (z.theta, z.gamma, z.lambda, phase)
}

pub fn to_qasm(c: &Circuit) -> Result<String, QasmError> {
    let mut body = String::new();
    let mut total_phase = 0.0;
    for (index, g) in c.gates().iter().enumerate() {
        match g.n_controls() {
            0 => {
                let (t, p, l, ph) = u3_angles(&g.payload);
                total_phase += ph;
                writeln!(body, "u3({t:?},{p:?},{l:?}) q[{}]; // phase {ph:?}", g.target).unwrap();
            }
            1 if g.payload.approx_eq(&Mat2::pauli_x(), RULE_TOL) => {
                let ctrl = g.controls.iter().next().expect("one control");
                writeln!(body, "cx q[{ctrl}],q[{}];", g.target).unwrap();
            }
            1 => return Err(QasmError::NotCnot { index }),
            controls => return Err(QasmError::TooManyControls { index, controls }),
        }
    }
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "// global phase {total_phase:?}").unwrap();
    writeln!(out, "qreg q[{}];", c.n_qubits()).unwrap();
    out.push_str(&body);
    Ok(out)
}

fn perr(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn qubit_index(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.trim()
        .strip_prefix("q[")
        .and_then(|t| t.strip_suffix(']'))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| perr(line, format!("bad qubit reference `{tok}`")))
}

/// Reads back the subset of OpenQASM written by [`to_qasm`].
pub fn from_qasm(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let (code, comment) = match raw.split_once("//") {
            Some((c, m)) => (c.trim(), Some(m.trim())),
            None => (raw.trim(), None),
        };
        if code.is_empty() || code.starts_with("OPENQASM") || code.starts_with("include") {
            continue;
        }
        let stmt = code.strip_suffix(';').ok_or_else(|| perr(line, "missing `;`"))?;
        if let Some(rest) = stmt.strip_prefix("qreg") {
            let n = qubit_index(rest, line)?;
            circuit = Some(Circuit::new(n));
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| perr(line, "gate before `qreg`"))?;
        let gate = if let Some(rest) = stmt.strip_prefix("cx") {
            let (a, b) = rest.split_once(',').ok_or_else(|| perr(line, "expected `cx q[a],q[b]`"))?;
            let (ctrl, tgt) = (qubit_index(a, line)?, qubit_index(b, line)?);
            Gate::new(tgt, [ctrl], Mat2::pauli_x()).map_err(|e| perr(line, e.to_string()))?
        } else if let Some(rest) = stmt.strip_prefix("u3(") {
            let (args, q) = rest.split_once(')').ok_or_else(|| perr(line, "unterminated `u3(`"))?;
            let angles = args
                .split(',')
                .map(|a| a.trim().parse::<f64>().map_err(|_| perr(line, format!("bad angle `{a}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if angles.len() != 3 {
                return Err(perr(line, "u3 takes three angles"));
            }
            let phase = match comment.and_then(|m| m.strip_prefix("phase")) {
                Some(p) => p.trim().parse::<f64>().map_err(|_| perr(line, "bad phase comment"))?,
                None => 0.0,
            };
            let m = u3(angles[0], angles[1], angles[2]).scale(cis(phase));
            Gate::new(qubit_index(q, line)?, [], m).map_err(|e| perr(line, e.to_string()))?
        } else {
            return Err(perr(line, format!("unsupported statement `{stmt}`")));
        };
        c.push(gate).map_err(|e| perr(line, e.to_string()))?;
    }
    circuit.ok_or_else(|| perr(0, "missing `qreg`"))
}
