//! Lowering block structures to a flat gate list.
//!
//! Gates use the usual half-angle convention (`rz(φ) = exp(-iφZ/2)`,
//! `rxx(φ) = exp(-iφ XX/2)`), so a block `exp(-iθP)` becomes a gate with angle
//! `2θ`. Qubits are 0-based here; qubit 0 is block-chain qubit 1.
//!
//! In [`LoweringStyle::Cnot`] the two-qubit rotations are rewritten with these
//! exact identities (gates listed in time order):
//!
//! * `rxx(φ) q,p`  = `h q; h p; cx q,p; rz(φ) p; cx q,p; h q; h p`
//! * `ryy(φ) q,p`  = `rx(π/2) q; rx(π/2) p; cx q,p; rz(φ) p; cx q,p; rx(-π/2) q; rx(-π/2) p`
//! * `rxx(φ) q,p; ryy(ψ) q,p` = `rx(π/2) q; rx(π/2) p; cx q,p; rx(φ) q; rz(ψ) p; cx q,p; rx(-π/2) q; rx(-π/2) p`
//!
//! The last one needs only two CNOTs for a full XX+YY bond interaction and is
//! used whenever an `rxx` and `ryy` on the same pair are adjacent.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::circuit::{Block, BlockKind, BlockMapping, BlockSequence, Support};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    Rx(f64, usize),
    Ry(f64, usize),
    Rz(f64, usize),
    Rxx(f64, usize, usize),
    Ryy(f64, usize, usize),
    /// Control, target.
    Cx(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::Rx(_, q) | Gate::Ry(_, q) | Gate::Rz(_, q) => (q, None),
            Gate::Rxx(_, a, b) | Gate::Ryy(_, a, b) | Gate::Cx(a, b) => (a, Some(b)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::Rx(..) => "rx",
            Gate::Ry(..) => "ry",
            Gate::Rz(..) => "rz",
            Gate::Rxx(..) => "rxx",
            Gate::Ryy(..) => "ryy",
            Gate::Cx(..) => "cx",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rx(a, _) | Gate::Ry(a, _) | Gate::Rz(a, _) | Gate::Rxx(a, ..) | Gate::Ryy(a, ..) => Some(a),
            _ => None,
        }
    }
}

/// Gates in time order (first element acts first).
#[derive(Clone, Debug, PartialEq)]
pub struct GateSeq {
    n: usize,
    gates: Vec<Gate>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GateStats {
    pub gates: usize,
    pub two_qubit_rotations: usize,
    pub cnots: usize,
    pub depth: usize,
}

impl GateSeq {
    pub fn new(n: usize) -> GateSeq {
        GateSeq { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<GateSeq> {
        for g in &gates {
            let (a, b) = g.qubits();
            let hi = b.map_or(a, |b| a.max(b));
            if hi >= n || Some(a) == b {
                return Err(Error::DimensionMismatch { expected: n, got: hi + 1 });
            }
        }
        Ok(GateSeq { n, gates })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn stats(&self) -> GateStats {
        let mut layer = alloc::vec![0usize; self.n];
        let mut s = GateStats { gates: self.gates.len(), ..GateStats::default() };
        for g in &self.gates {
            match g {
                Gate::Rxx(..) | Gate::Ryy(..) => s.two_qubit_rotations += 1,
                Gate::Cx(..) => s.cnots += 1,
                _ => {}
            }
            let (a, b) = g.qubits();
            let l = 1 + b.map_or(layer[a], |b| layer[a].max(layer[b]));
            layer[a] = l;
            if let Some(b) = b {
                layer[b] = l;
            }
            s.depth = s.depth.max(l);
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LoweringStyle {
    /// Native `rxx`/`ryy` rotations.
    #[default]
    Rotations,
    /// Only `cx` plus single-qubit rotations.
    Cnot,
}

fn block_gates(mapping: BlockMapping, b: &Block, out: &mut Vec<Gate>) {
    let (q, pair) = match mapping.support(b.index()) {
        Support::Site(q) => (q - 1, None),
        Support::Bond(q) => (q - 1, Some(q)),
    };
    match (b.kind(), pair) {
        (BlockKind::Z, _) => out.push(Gate::Rz(2.0 * b.angle().unwrap(), q)),
        (BlockKind::Xx, Some(p)) => out.push(Gate::Rxx(2.0 * b.angle().unwrap(), q, p)),
        (BlockKind::Yy, Some(p)) => out.push(Gate::Ryy(2.0 * b.angle().unwrap(), q, p)),
        (BlockKind::Tfxy, Some(p)) => {
            let t = b.tfxy_payload().unwrap().to_angles();
            out.extend([
                Gate::Rz(2.0 * t.f, q),
                Gate::Rz(2.0 * t.g, p),
                Gate::Rxx(2.0 * t.c, q, p),
                Gate::Ryy(2.0 * t.d, q, p),
                Gate::Rz(2.0 * t.a, q),
                Gate::Rz(2.0 * t.b, p),
            ]);
        }
        _ => unreachable!("bond kinds always have a pair"),
    }
}

/// Time-ordered blocks of one structure, paired with its mapping.
fn time_order(s: &dyn BlockSequence) -> impl Iterator<Item = (BlockMapping, &Block)> {
    let m = s.mapping();
    s.blocks().into_iter().rev().map(move |b| (m, b))
}

/// Two Kitaev chains with opposite kinds and the same block layout act on the
/// same bonds in lockstep; interleaving them puts each XX next to its YY partner.
fn lockstep(a: &dyn BlockSequence, b: &dyn BlockSequence) -> bool {
    let kitaev = |m| matches!(m, BlockMapping::Kitaev { .. });
    if !(kitaev(a.mapping()) && kitaev(b.mapping()) && a.mapping() != b.mapping()) {
        return false;
    }
    let (x, y) = (a.blocks(), b.blocks());
    x.len() == y.len() && x.iter().zip(&y).all(|(p, q)| p.index() == q.index())
}

/// Lowers structures given in time order (`parts[0]` acts first) to gates.
pub fn lower_to_gates(parts: &[&dyn BlockSequence], style: LoweringStyle) -> Result<GateSeq> {
    let n = parts.first().map_or(0, |p| p.n_qubits());
    if let Some(p) = parts.iter().find(|p| p.n_qubits() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: p.n_qubits() });
    }
    let mut rot = Vec::new();
    let mut k = 0;
    while k < parts.len() {
        if k + 1 < parts.len() && lockstep(parts[k], parts[k + 1]) {
            // The two chains commute block for block, so interleaving is exact.
            for ((ma, a), (mb, b)) in time_order(parts[k]).zip(time_order(parts[k + 1])) {
                block_gates(ma, a, &mut rot);
                block_gates(mb, b, &mut rot);
            }
            k += 2;
        } else {
            for (m, b) in time_order(parts[k]) {
                block_gates(m, b, &mut rot);
            }
            k += 1;
        }
    }
    let gates = match style {
        LoweringStyle::Rotations => rot,
        LoweringStyle::Cnot => to_cnot(&rot),
    };
    GateSeq::from_gates(n, gates)
}

fn to_cnot(rot: &[Gate]) -> Vec<Gate> {
    let mut out = Vec::with_capacity(rot.len() * 4);
    let mut i = 0;
    while i < rot.len() {
        let pair = match (rot[i], rot.get(i + 1)) {
            (Gate::Rxx(x, a, b), Some(&Gate::Ryy(y, c, d))) | (Gate::Ryy(y, a, b), Some(&Gate::Rxx(x, c, d)))
                if (a, b) == (c, d) =>
            {
                Some((x, y, a, b))
            }
            _ => None,
        };
        if let Some((x, y, a, b)) = pair {
            out.extend([
                Gate::Rx(FRAC_PI_2, a),
                Gate::Rx(FRAC_PI_2, b),
                Gate::Cx(a, b),
                Gate::Rx(x, a),
                Gate::Rz(y, b),
                Gate::Cx(a, b),
                Gate::Rx(-FRAC_PI_2, a),
                Gate::Rx(-FRAC_PI_2, b),
            ]);
            i += 2;
            continue;
        }
        match rot[i] {
            Gate::Rxx(x, a, b) => out.extend([
                Gate::H(a),
                Gate::H(b),
                Gate::Cx(a, b),
                Gate::Rz(x, b),
                Gate::Cx(a, b),
                Gate::H(a),
                Gate::H(b),
            ]),
            Gate::Ryy(y, a, b) => out.extend([
                Gate::Rx(FRAC_PI_2, a),
                Gate::Rx(FRAC_PI_2, b),
                Gate::Cx(a, b),
                Gate::Rz(y, b),
                Gate::Cx(a, b),
                Gate::Rx(-FRAC_PI_2, a),
                Gate::Rx(-FRAC_PI_2, b),
            ]),
            g => out.push(g),
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_count_layers() {
        let g = GateSeq::from_gates(
            3,
            alloc::vec![Gate::Rz(0.1, 0), Gate::Rz(0.1, 2), Gate::Cx(0, 1), Gate::Rxx(0.2, 1, 2)],
        )
        .unwrap();
        let s = g.stats();
        assert_eq!((s.gates, s.cnots, s.two_qubit_rotations, s.depth), (4, 1, 1, 3));
    }

    #[test]
    fn out_of_range_qubit_rejected() {
        assert!(GateSeq::from_gates(2, alloc::vec![Gate::Cx(1, 2)]).is_err());
        assert!(GateSeq::from_gates(2, alloc::vec![Gate::Cx(1, 1)]).is_err());
    }
}
