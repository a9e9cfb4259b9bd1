//! OpenQASM 2.0 output and a reader for the subset we emit.
//!
//! Angles are written with 17 significant digits so a parse reproduces the
//! original doubles bit for bit. `rxx`/`ryy` come from Qiskit's `qelib1.inc`;
//! the CNOT lowering style avoids them.

use std::fmt::Write;

use blockcomp_core::export::{Gate, GateSeq};

use crate::error::CliError;

pub fn emit_qasm(g: &GateSeq) -> String {
    let n = g.n_qubits();
    let mut s = format!("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[{n}];\ncreg c[{n}];\n");
    for gate in g.gates() {
        let name = gate.name();
        let _ = match (gate.angle(), gate.qubits()) {
            (Some(a), (q, None)) => writeln!(s, "{name}({a:.16e}) q[{q}];"),
            (Some(a), (p, Some(q))) => writeln!(s, "{name}({a:.16e}) q[{p}],q[{q}];"),
            (None, (q, None)) => writeln!(s, "{name} q[{q}];"),
            (None, (p, Some(q))) => writeln!(s, "{name} q[{p}],q[{q}];"),
        };
    }
    s
}

fn qubit(tok: &str, line: usize) -> Result<usize, CliError> {
    tok.trim()
        .strip_prefix("q[")
        .and_then(|t| t.strip_suffix(']'))
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| CliError::Qasm { line, msg: format!("bad qubit operand `{tok}`") })
}

/// Reads programs in the shape [`emit_qasm`] writes.
pub fn parse_qasm(text: &str) -> Result<GateSeq, CliError> {
    let mut n = None;
    let mut gates = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let stmt = raw.split("//").next().unwrap_or("").trim();
        if stmt.is_empty() {
            continue;
        }
        let err = |msg: &str| CliError::Qasm { line, msg: msg.to_string() };
        let stmt = stmt.strip_suffix(';').ok_or_else(|| err("missing `;`"))?;
        if stmt.starts_with("OPENQASM") || stmt.starts_with("include") || stmt.starts_with("creg") {
            continue;
        }
        if let Some(r) = stmt.strip_prefix("qreg ") {
            let size = r
                .trim()
                .strip_prefix("q[")
                .and_then(|t| t.strip_suffix(']'))
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err("bad qreg"))?;
            n = Some(size);
            continue;
        }
        let (head, operands) = stmt.split_once(' ').ok_or_else(|| err("expected operands"))?;
        let (name, angle) = match head.split_once('(') {
            Some((name, rest)) => {
                let a = rest.strip_suffix(')').ok_or_else(|| err("unclosed angle"))?;
                let a: f64 = a.trim().parse().map_err(|_| err("bad angle"))?;
                (name, Some(a))
            }
            None => (head, None),
        };
        let qs = operands.split(',').map(|t| qubit(t, line)).collect::<Result<Vec<_>, _>>()?;
        let gate = match (name, angle, qs.as_slice()) {
            ("h", None, &[q]) => Gate::H(q),
            ("rx", Some(a), &[q]) => Gate::Rx(a, q),
            ("ry", Some(a), &[q]) => Gate::Ry(a, q),
            ("rz", Some(a), &[q]) => Gate::Rz(a, q),
            ("rxx", Some(a), &[p, q]) => Gate::Rxx(a, p, q),
            ("ryy", Some(a), &[p, q]) => Gate::Ryy(a, p, q),
            ("cx", None, &[p, q]) => Gate::Cx(p, q),
            _ => return Err(err(&format!("unsupported statement `{stmt}`"))),
        };
        gates.push(gate);
    }
    let n = n.ok_or(CliError::Qasm { line: 0, msg: "no qreg declaration".into() })?;
    GateSeq::from_gates(n, gates).map_err(CliError::Model)
}
