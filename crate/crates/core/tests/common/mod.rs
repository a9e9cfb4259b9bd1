#![allow(dead_code)]

use blockcomp_core::algebra::{Axis, TfxyAngles, TfxyPayload};
use blockcomp_core::circuit::{Block, BlockIndex, BlockKind, BlockMapping, BlockSequence, Payload, Support, Zigzag};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type M = DMatrix<Complex64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli(a: Option<Axis>) -> M {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let v = match a {
        None => [o, z, z, o],
        Some(Axis::X) => [z, o, o, z],
        Some(Axis::Y) => [z, i, -i, z],
        Some(Axis::Z) => [o, z, z, -o],
    };
    // column-major: [m00, m10, m01, m11]
    M::from_column_slice(2, 2, &v)
}

/// Kronecker product of single-qubit operators, qubit 1 leftmost.
pub fn pauli_string(n: usize, ops: &[(usize, Axis)]) -> M {
    let mut out = M::identity(1, 1);
    for q in 1..=n {
        let a = ops.iter().find(|(p, _)| *p == q).map(|(_, a)| *a);
        out = out.kronecker(&pauli(a));
    }
    out
}

/// `exp(-iθP)` for a Pauli string `P`.
pub fn exp_pauli(n: usize, ops: &[(usize, Axis)], theta: f64) -> M {
    let dim = 1 << n;
    M::identity(dim, dim) * c(theta.cos(), 0.0) - pauli_string(n, ops) * c(0.0, theta.sin())
}

pub fn embed_4x4(n: usize, q: usize, m4: [[Complex64; 4]; 4]) -> M {
    let local = M::from_fn(4, 4, |r, cc| m4[r][cc]);
    let left = M::identity(1 << (q - 1), 1 << (q - 1));
    let right = M::identity(1 << (n - q - 1), 1 << (n - q - 1));
    left.kronecker(&local).kronecker(&right)
}

/// Dense operator of one block, built from Kronecker products only.
pub fn dense_block(n: usize, mapping: BlockMapping, b: &Block) -> M {
    match (mapping.support(b.index()), b.payload()) {
        (Support::Site(q), Payload::Rotation(_)) => exp_pauli(n, &[(q, Axis::Z)], b.angle().unwrap()),
        (Support::Bond(q), Payload::Rotation(_)) => {
            let a = if b.kind() == BlockKind::Xx { Axis::X } else { Axis::Y };
            exp_pauli(n, &[(q, a), (q + 1, a)], b.angle().unwrap())
        }
        (Support::Bond(q), Payload::Tfxy(p)) => embed_4x4(n, q, p.to_matrix4()),
        _ => unreachable!(),
    }
}

/// Operator product of a structure's blocks, left to right.
pub fn dense<S: BlockSequence + ?Sized>(s: &S) -> M {
    let n = s.n_qubits();
    let mut u = M::identity(1 << n, 1 << n);
    for b in s.blocks() {
        u *= dense_block(n, s.mapping(), b);
    }
    u
}

/// Structures in time order: `parts[0]` acts first.
pub fn dense_time_order(parts: &[&dyn BlockSequence]) -> M {
    let n = parts[0].n_qubits();
    let mut u = M::identity(1 << n, 1 << n);
    for p in parts {
        u = dense(*p) * u;
    }
    u
}

pub fn dist(a: &M, b: &M) -> f64 {
    (a - b).norm()
}

/// Distance modulo a global phase.
pub fn phase_dist(a: &M, b: &M) -> f64 {
    let ov: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let ph = ov / ov.norm();
    (a - b * ph).norm()
}

pub fn ix(i: usize) -> BlockIndex {
    BlockIndex::new(i as u32).unwrap()
}

pub fn random_angle(r: &mut ChaCha8Rng) -> f64 {
    r.gen_range(-std::f64::consts::PI..std::f64::consts::PI)
}

pub fn random_tfxy(r: &mut ChaCha8Rng) -> TfxyPayload {
    TfxyPayload::from_angles(&TfxyAngles {
        a: random_angle(r),
        b: random_angle(r),
        c: random_angle(r),
        d: random_angle(r),
        f: random_angle(r),
        g: random_angle(r),
    })
}

pub fn random_block(r: &mut ChaCha8Rng, mapping: BlockMapping, i: usize) -> Block {
    match mapping.kind_at(ix(i)) {
        BlockKind::Tfxy => Block::tfxy(ix(i), random_tfxy(r)),
        k => Block::rotation(ix(i), k, random_angle(r)),
    }
}

pub fn random_zigzag(r: &mut ChaCha8Rng, mapping: BlockMapping, height: usize) -> Zigzag {
    let blocks: Vec<Block> = (1..=height).map(|i| random_block(r, mapping, i)).collect();
    Zigzag::from_blocks(mapping, height, &blocks).unwrap()
}

pub const MAPPINGS: [BlockMapping; 4] = [
    BlockMapping::KITAEV_ODD_XX,
    BlockMapping::KITAEV_ODD_YY,
    BlockMapping::Tfim,
    BlockMapping::Tfxy,
];

/// Height that gives `n` qubits under a mapping.
pub fn height_for(mapping: BlockMapping, n: usize) -> usize {
    mapping.height(n)
}

use blockcomp_core::export::{Gate, GateSeq};
use blockcomp_core::models::{Channel, Couplings, Family, ModelSpec};

/// Dense operator of one gate from Kronecker products (0-based gate qubits).
pub fn dense_gate(n: usize, g: &Gate) -> M {
    let dim = 1 << n;
    match *g {
        Gate::H(q) => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            (pauli_string(n, &[(q + 1, Axis::X)]) + pauli_string(n, &[(q + 1, Axis::Z)])) * c(s, 0.0)
        }
        Gate::Rx(p, q) => exp_pauli(n, &[(q + 1, Axis::X)], p / 2.0),
        Gate::Ry(p, q) => exp_pauli(n, &[(q + 1, Axis::Y)], p / 2.0),
        Gate::Rz(p, q) => exp_pauli(n, &[(q + 1, Axis::Z)], p / 2.0),
        Gate::Rxx(p, a, b) => exp_pauli(n, &[(a + 1, Axis::X), (b + 1, Axis::X)], p / 2.0),
        Gate::Ryy(p, a, b) => exp_pauli(n, &[(a + 1, Axis::Y), (b + 1, Axis::Y)], p / 2.0),
        Gate::Cx(ct, t) => {
            let i = M::identity(dim, dim);
            let zc = pauli_string(n, &[(ct + 1, Axis::Z)]);
            let xt = pauli_string(n, &[(t + 1, Axis::X)]);
            (&i + &zc + &xt - &zc * &xt) * c(0.5, 0.0)
        }
    }
}

pub fn dense_gates(g: &GateSeq) -> M {
    let n = g.n_qubits();
    g.gates().iter().fold(M::identity(1 << n, 1 << n), |u, x| dense_gate(n, x) * u)
}

pub fn random_model(family: Family, n: usize, seed: u64) -> ModelSpec {
    let mut r = rng(seed);
    let mut cp = Couplings::zeros(n);
    for ch in Channel::ALL {
        if family.allows(ch) {
            for x in cp.channel_mut(ch) {
                *x = r.gen_range(-1.0..1.0);
            }
        }
    }
    if family == Family::Kitaev {
        for i in 0..n - 1 {
            if i % 2 == 0 {
                cp.yy[i] = 0.0
            } else {
                cp.xx[i] = 0.0
            }
        }
    }
    ModelSpec::new(family, n, cp).unwrap()
}
