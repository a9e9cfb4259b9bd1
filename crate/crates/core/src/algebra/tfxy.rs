//! Two-qubit TFXY group elements.
//!
//! Every TFXY term preserves the parity of the two qubits, and the group is
//! `SU(2) × SU(2)` acting separately on the even sector `{|00⟩, |11⟩}` and the
//! odd sector `{|01⟩, |10⟩}`. A payload stores those two matrices.
//!
//! Every element factors as
//! `e^{-iaZ₁} e^{-ibZ₂} e^{-icXX} e^{-idYY} e^{-ifZ₁} e^{-igZ₂}`, with sectors
//! `even = R_z(a+b) R_x(c−d) R_z(f+g)` and `odd = R_z(a−b) R_x(c+d) R_z(f−g)`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::su2::{euler_extract, su2_turnover, Axis, EulerTriple, Su2};
use crate::circuit::{Block, BlockIndex, BlockMapping, Triangle};
use crate::engine::{merge_block_in_place, OpCounter};

/// Two-qubit Pauli terms of the generalized TFXY family. `Z1` acts on the
/// first (lower-numbered) qubit of the bond.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoQubitTerm {
    Z1,
    Z2,
    XX,
    YY,
    XY,
    YX,
}

impl TwoQubitTerm {
    /// Restriction to the (even, odd) sectors as signed Pauli axes.
    fn sectors(self) -> ((Axis, f64), (Axis, f64)) {
        use TwoQubitTerm::*;
        match self {
            Z1 => ((Axis::Z, 1.0), (Axis::Z, 1.0)),
            Z2 => ((Axis::Z, 1.0), (Axis::Z, -1.0)),
            XX => ((Axis::X, 1.0), (Axis::X, 1.0)),
            YY => ((Axis::X, -1.0), (Axis::X, 1.0)),
            XY => ((Axis::Y, 1.0), (Axis::Y, -1.0)),
            YX => ((Axis::Y, 1.0), (Axis::Y, 1.0)),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TfxyAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub f: f64,
    pub g: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TfxyPayload {
    /// Even-parity sector, basis `(|00⟩, |11⟩)`.
    pub even: Su2,
    /// Odd-parity sector, basis `(|01⟩, |10⟩)`.
    pub odd: Su2,
}

impl Default for TfxyPayload {
    fn default() -> Self {
        TfxyPayload::identity()
    }
}

impl TfxyPayload {
    pub const fn identity() -> TfxyPayload {
        TfxyPayload { even: Su2::identity(), odd: Su2::identity() }
    }

    pub fn is_identity(&self) -> bool {
        self.even.is_identity() && self.odd.is_identity()
    }

    /// `exp(-iθ·P)` for a single two-qubit term.
    pub fn exp_term(term: TwoQubitTerm, theta: f64) -> TfxyPayload {
        let ((ea, es), (oa, os)) = term.sectors();
        TfxyPayload { even: Su2::rotation(ea, es * theta), odd: Su2::rotation(oa, os * theta) }
    }

    pub fn from_angles(t: &TfxyAngles) -> TfxyPayload {
        let sector = |p1: f64, p2: f64, p3: f64| {
            Su2::rotation(Axis::Z, p1) * Su2::rotation(Axis::X, p2) * Su2::rotation(Axis::Z, p3)
        };
        TfxyPayload {
            even: sector(t.a + t.b, t.c - t.d, t.f + t.g),
            odd: sector(t.a - t.b, t.c + t.d, t.f - t.g),
        }
    }

    pub fn to_angles(&self) -> TfxyAngles {
        let p = zxz_unsigned(&self.even);
        let q = zxz_unsigned(&self.odd);
        TfxyAngles {
            a: (p[0] + q[0]) / 2.0,
            b: (p[0] - q[0]) / 2.0,
            c: (p[1] + q[1]) / 2.0,
            d: (q[1] - p[1]) / 2.0,
            f: (p[2] + q[2]) / 2.0,
            g: (p[2] - q[2]) / 2.0,
        }
    }

    /// Operator product `self · rhs`.
    pub fn fuse(&self, rhs: &TfxyPayload) -> TfxyPayload {
        TfxyPayload { even: self.even * rhs.even, odd: self.odd * rhs.odd }
    }

    /// The same operator with the two qubits of the bond exchanged.
    pub fn reflect(&self) -> TfxyPayload {
        let x = Su2::rotation(Axis::X, core::f64::consts::FRAC_PI_2);
        // R_x(π/2) = -iX, so conjugating by it is conjugation by X.
        TfxyPayload { even: self.even, odd: x * self.odd * x.adjoint() }
    }

    /// Dense 4x4 matrix in the basis `|q₁q₂⟩`, first qubit most significant.
    pub fn to_matrix4(&self) -> [[Complex64; 4]; 4] {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        let even = [0usize, 3];
        let odd = [1usize, 2];
        for r in 0..2 {
            for c in 0..2 {
                m[even[r]][even[c]] = self.even.get(r, c);
                m[odd[r]][odd[c]] = self.odd.get(r, c);
            }
        }
        m
    }

    /// Reads the two sectors from a 4x4 matrix, ignoring any parity-mixing entries.
    pub fn from_matrix4(m: &[[Complex64; 4]; 4]) -> TfxyPayload {
        TfxyPayload {
            even: Su2::from_matrix([[m[0][0], m[0][3]], [m[3][0], m[3][3]]]),
            odd: Su2::from_matrix([[m[1][1], m[1][2]], [m[2][1], m[2][2]]]),
        }
    }

    pub fn distance(&self, other: &TfxyPayload) -> f64 {
        libm::hypot(self.even.distance(&other.even), self.odd.distance(&other.odd))
    }
}

/// Z-X-Z angles with any overall `-1` folded into the first angle.
fn zxz_unsigned(u: &Su2) -> [f64; 3] {
    let t = euler_extract(u, Axis::Z);
    let mut a = t.angles;
    if t.sign < 0.0 {
        a[0] += PI;
    }
    a
}

// Local TFIM indices on three qubits: 1 = Z₁, 2 = XX₁₂, 3 = Z₂, 4 = XX₂₃, 5 = Z₃.
fn tfim_block(index: u32, theta: f64) -> Block {
    let i = BlockIndex::new(index).expect("local TFIM index");
    Block::rotation(i, BlockMapping::Tfim.kind_at(i), theta)
}

/// Expands a TFXY block on the local bond starting at site `base` (1 or 2) into
/// TFIM blocks, rewriting `YY(d)` as `XX(d)` conjugated by `π/4` Z rotations.
/// Fusion with earlier blocks looks no further back than `floor`.
fn expand_to_tfim(p: &TfxyPayload, base: u32, out: &mut Vec<Block>, floor: usize) {
    let t = p.to_angles();
    let (z1, xx, z2) = (2 * base - 1, 2 * base, 2 * base + 1);
    let seq = [
        (z1, t.a),
        (z2, t.b),
        (xx, t.c),
        (z1, -FRAC_PI_4),
        (z2, -FRAC_PI_4),
        (xx, t.d),
        (z1, FRAC_PI_4 + t.f),
        (z2, FRAC_PI_4 + t.g),
    ];
    for (idx, theta) in seq {
        push_fused(out, tfim_block(idx, theta), floor);
    }
}

/// Appends `b` on the right, fusing it into an earlier block (at position
/// `floor` or later) of the same index when every block in between commutes with it.
fn push_fused(out: &mut Vec<Block>, b: Block, floor: usize) {
    let i = b.index().get();
    for k in (floor..out.len()).rev() {
        let j = out[k].index().get();
        if j == i {
            let theta = out[k].angle().unwrap() + b.angle().unwrap();
            out[k] = tfim_block(i, theta);
            return;
        }
        if j.abs_diff(i) <= 1 {
            break;
        }
    }
    out.push(b);
}

/// Product of two partial blocks, done sector by sector as
/// `R_z(p₁) [R_x(p₂) R_z(p₃+q₁) R_x(q₂)] R_z(q₃)` with one su(2) turnover on the bracket.
fn fuse_partials(p: &TfxyAngles, q: &TfxyAngles, counter: &mut OpCounter) -> TfxyPayload {
    let sector = |p: [f64; 3], q: [f64; 3], counter: &mut OpCounter| {
        counter.su2_kernel_turnovers += 1;
        let mid = su2_turnover(&EulerTriple::new(Axis::X, [p[1], p[2] + q[0], q[1]]));
        let mut head = p[0] + mid.angles[0];
        if mid.sign < 0.0 {
            head += PI;
        }
        Su2::rotation(Axis::Z, head) * Su2::rotation(Axis::X, mid.angles[1]) * Su2::rotation(Axis::Z, mid.angles[2] + q[2])
    };
    let even = |t: &TfxyAngles| [t.a + t.b, t.c - t.d, t.f + t.g];
    let odd = |t: &TfxyAngles| [t.a - t.b, t.c + t.d, t.f - t.g];
    TfxyPayload {
        even: sector(even(p), even(q), counter),
        odd: sector(odd(p), odd(q), counter),
    }
}

/// TFXY turnover `B_i B_{i+1} B_i → B_{i+1} B_i B_{i+1}`, given as payloads of
/// the lower, upper and lower block; returns upper, lower, upper.
///
/// The three blocks are lowered to TFIM blocks on three qubits, merged into a
/// height-5 TFIM triangle with su(2) turnovers, and the triangle is regrouped
/// into three TFXY blocks with one more fusion per outer pair. On generic input
/// this costs 26 + 6 = 32 su(2) turnovers, recorded in `counter`.
pub fn tfxy_turnover(
    left: &TfxyPayload,
    mid: &TfxyPayload,
    right: &TfxyPayload,
    counter: &mut OpCounter,
) -> [TfxyPayload; 3] {
    // Each block only fuses across its seam with the block before it, which
    // leaves 22 TFIM blocks and 26 turnovers on generic input.
    let mut seq = Vec::with_capacity(24);
    expand_to_tfim(left, 1, &mut seq, 0);
    let seam = seq.len();
    expand_to_tfim(mid, 2, &mut seq, 0);
    expand_to_tfim(right, 1, &mut seq, seam);

    let mut tri = Triangle::identity(BlockMapping::Tfim, 5);
    let mut inner = OpCounter::default();
    for b in &seq {
        merge_block_in_place(&mut tri, *b, &mut inner).expect("local TFIM merge");
    }
    counter.su2_kernel_turnovers += inner.su2_kernel_turnovers;

    // angle of block `idx` in cascade C_{lo,5}
    let at = |lo: usize, idx: usize| tri.cascade(lo).block(idx).angle().unwrap();
    let z = TfxyAngles::default();
    let upper_left = fuse_partials(
        &TfxyAngles { b: at(5, 5), c: at(4, 4), ..z },
        &TfxyAngles { a: at(3, 3), b: at(4, 5), c: at(3, 4), g: at(3, 5), ..z },
        counter,
    );
    let lower = fuse_partials(
        &TfxyAngles { c: at(2, 2), g: at(2, 3), ..z },
        &TfxyAngles { a: at(1, 1), c: at(1, 2), ..z },
        counter,
    );
    let upper_right = fuse_partials(
        &TfxyAngles { c: at(2, 4), g: at(2, 5), ..z },
        &TfxyAngles { a: at(1, 3), c: at(1, 4), g: at(1, 5), ..z },
        counter,
    );
    [upper_left, lower, upper_right]
}

/// The opposite orientation `B_{i+1} B_i B_{i+1} → B_i B_{i+1} B_i`, obtained by
/// reflecting the three qubits, applying [`tfxy_turnover`], and reflecting back.
pub fn tfxy_turnover_up(
    left: &TfxyPayload,
    mid: &TfxyPayload,
    right: &TfxyPayload,
    counter: &mut OpCounter,
) -> [TfxyPayload; 3] {
    let [a, b, c] = tfxy_turnover(&left.reflect(), &mid.reflect(), &right.reflect(), counter);
    [a.reflect(), b.reflect(), c.reflect()]
}
