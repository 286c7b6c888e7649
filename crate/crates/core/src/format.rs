//! Plain-text circuit and unitary file formats.
//!
//! Circuit files carry one gate per line after a `qubits <n>` header:
//!
//! ```text
//! # comment
//! qubits 3
//! gate 2 [0,1] 0 0 1 0 1 0 0 0
//! x 1
//! cnot 0 2
//! ```
//!
//! The eight numbers after the control list are the real and imaginary parts
//! of `a00 a01 a10 a11`. Unitary files start with `n <qubits>` followed by
//! `2^n` rows of `2^n` entries written as `re+imj`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::matlin::{Mat2, UnitaryMatrix, C64};

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, ParseError> {
    let v: f64 = tok.parse().map_err(|_| err(line, format!("invalid number `{tok}`")))?;
    if !v.is_finite() {
        return Err(err(line, format!("non-finite number `{tok}`")));
    }
    Ok(v)
}

/// Strips a trailing `#` comment and surrounding whitespace.
fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        if head == "qubits" {
            if circuit.is_some() {
                return Err(err(line, "duplicate `qubits` header"));
            }
            let n = parse_usize(rest, line, "qubit count")?;
            if n == 0 || n > crate::circuit::MAX_QUBITS {
                return Err(err(line, format!("qubit count {n} out of range")));
            }
            circuit = Some(Circuit::new(n));
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| err(line, "gate before `qubits` header"))?;
        let gate = match head {
            "x" => {
                let t = parse_usize(rest, line, "target")?;
                Gate::not(t)
            }
            "cnot" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(err(line, "expected `cnot <ctrl> <target>`"));
                }
                let ctrl = parse_usize(toks[0], line, "control")?;
                let t = parse_usize(toks[1], line, "target")?;
                Gate::new(t, [ctrl], Mat2::pauli_x()).map_err(|e| err(line, e.to_string()))?
            }
            "gate" => parse_gate_body(rest, line)?,
            other => return Err(err(line, format!("unknown statement `{other}`"))),
        };
        c.push(gate).map_err(|e| err(line, e.to_string()))?;
    }
    circuit.ok_or_else(|| err(0, "missing `qubits` header"))
}

fn parse_gate_body(rest: &str, line: usize) -> Result<Gate, ParseError> {
    let (target_tok, after) = rest.split_once(char::is_whitespace).ok_or_else(|| err(line, "truncated gate"))?;
    let target = parse_usize(target_tok, line, "target")?;
    let after = after.trim_start();
    if !after.starts_with('[') {
        return Err(err(line, "expected `[` control list"));
    }
    let close = after.find(']').ok_or_else(|| err(line, "unterminated control list"))?;
    let controls = after[1..close]
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_usize(s, line, "control"))
        .collect::<Result<Vec<_>, _>>()?;
    let nums = after[close + 1..]
        .split_whitespace()
        .map(|t| parse_f64(t, line))
        .collect::<Result<Vec<_>, _>>()?;
    if nums.len() != 8 {
        return Err(err(line, format!("expected 8 matrix numbers, found {}", nums.len())));
    }
    let z = |k: usize| C64::new(nums[2 * k], nums[2 * k + 1]);
    let payload = Mat2::new(z(0), z(1), z(2), z(3));
    Gate::new(target, controls, payload).map_err(|e| err(line, e.to_string()))
}

pub fn write_circuit(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.n_qubits());
    for g in c.gates() {
        let ctrls: Vec<String> = g.controls.iter().map(|q| q.to_string()).collect();
        write!(out, "gate {} [{}]", g.target, ctrls.join(",")).unwrap();
        for z in g.payload.0.iter().flatten() {
            write!(out, " {} {}", z.re, z.im).unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_complex(tok: &str, line: usize) -> Result<C64, ParseError> {
    let body = tok
        .strip_suffix('j')
        .or_else(|| tok.strip_suffix('i'))
        .ok_or_else(|| err(line, format!("entry `{tok}` must end in `j`")))?;
    // Split at the last sign that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(|| err(line, format!("entry `{tok}` is not of the form re+imj")))?;
    let re = parse_f64(&body[..split], line)?;
    let im_txt = &body[split..];
    let im = parse_f64(im_txt.strip_prefix('+').unwrap_or(im_txt), line)?;
    Ok(C64::new(re, im))
}

fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", z.re, sign, z.im.abs())
}

pub fn parse_unitary(text: &str) -> Result<UnitaryMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, content(l)))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| err(0, "empty unitary file"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", k] => parse_usize(k, hline, "qubit count")?,
        _ => return Err(err(hline, "expected header `n <qubits>`")),
    };
    if n == 0 || n > crate::circuit::MAX_ORACLE_QUBITS {
        return Err(err(hline, format!("qubit count {n} out of range")));
    }
    let dim = 1usize << n;
    let mut rows = Vec::with_capacity(dim);
    for (line, body) in lines {
        if rows.len() == dim {
            return Err(err(line, "more rows than 2^n"));
        }
        let row = body.split_whitespace().map(|t| parse_complex(t, line)).collect::<Result<Vec<_>, _>>()?;
        if row.len() != dim {
            return Err(err(line, format!("expected {dim} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != dim {
        return Err(err(text.lines().count(), format!("expected {dim} rows, found {}", rows.len())));
    }
    UnitaryMatrix::from_rows(rows).map_err(|e| err(hline, e.to_string()))
}

pub fn write_unitary(u: &UnitaryMatrix) -> String {
    let mut out = format!("n {}\n", u.n_qubits());
    for r in 0..u.dim() {
        let row: Vec<String> = u.row(r).iter().map(|&z| format_complex(z)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
