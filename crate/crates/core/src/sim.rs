//! Dense state-vector and unitary simulation, used as the correctness oracle.
//!
//! Basis index bits run from qubit 1 (most significant) to qubit `n`; bit
//! value 0 is spin up (`Z = +1`).

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::algebra::su2::Axis;
use crate::circuit::{Block, BlockMapping, BlockSequence, Payload, Support};
use crate::error::{Error, Result};
use crate::export::{Gate, GateSeq};
use crate::models::ModelSpec;

/// Largest qubit count for dense-unitary construction unless the caller asks otherwise.
pub const DEFAULT_DENSE_CAP: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn bit(n: usize, q: usize) -> usize {
    1 << (n - q)
}

impl StateVector {
    /// `|0…0⟩`, all spins up.
    pub fn zero(n: usize) -> StateVector {
        StateVector::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> StateVector {
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { n, amps }
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<StateVector> {
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, got: amps.len() });
        }
        Ok(StateVector { n, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amps.iter().map(|a| a.norm_sqr()).sum())
    }

    /// Applies a single-qubit matrix to qubit `q`.
    pub fn apply_1q(&mut self, q: usize, m: &[[Complex64; 2]; 2]) {
        let b = bit(self.n, q);
        for i in 0..self.amps.len() {
            if i & b == 0 {
                let (x, y) = (self.amps[i], self.amps[i | b]);
                self.amps[i] = m[0][0] * x + m[0][1] * y;
                self.amps[i | b] = m[1][0] * x + m[1][1] * y;
            }
        }
    }

    /// Applies a 4x4 matrix to qubits `(q1, q2)` with `q1` as the high bit of the local index.
    pub fn apply_2q(&mut self, q1: usize, q2: usize, m: &[[Complex64; 4]; 4]) {
        let (b1, b2) = (bit(self.n, q1), bit(self.n, q2));
        for i in 0..self.amps.len() {
            if i & (b1 | b2) == 0 {
                let idx = [i, i | b2, i | b1, i | b1 | b2];
                let v = idx.map(|k| self.amps[k]);
                for r in 0..4 {
                    self.amps[idx[r]] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
                }
            }
        }
    }

    pub fn apply_block(&mut self, mapping: BlockMapping, b: &Block) {
        match (mapping.support(b.index()), b.payload()) {
            (Support::Site(q), Payload::Rotation(u)) => self.apply_1q(q, &u.matrix()),
            (Support::Bond(q), Payload::Tfxy(p)) => self.apply_2q(q, q + 1, &p.to_matrix4()),
            (Support::Bond(q), Payload::Rotation(u)) => {
                let axis = if b.kind().axis() == Some(Axis::X) { Axis::X } else { Axis::Y };
                let theta = u.rotation_angle(b.kind().axis().unwrap());
                self.apply_2q(q, q + 1, &pauli_pair_exp(axis, theta));
            }
            (Support::Site(_), Payload::Tfxy(_)) => unreachable!("TFXY blocks live on bonds"),
        }
    }

    /// Applies a structure; its rightmost block acts first.
    pub fn apply_sequence<S: BlockSequence + ?Sized>(&mut self, seq: &S) {
        let mapping = seq.mapping();
        for b in seq.blocks().into_iter().rev() {
            self.apply_block(mapping, b);
        }
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        let q = |i: usize| i + 1;
        match *g {
            Gate::H(a) => {
                let h = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
                self.apply_1q(q(a), &[[h, h], [h, -h]]);
            }
            Gate::Rx(phi, a) => self.apply_1q(q(a), &crate::algebra::Su2::rotation(Axis::X, phi / 2.0).matrix()),
            Gate::Ry(phi, a) => self.apply_1q(q(a), &crate::algebra::Su2::rotation(Axis::Y, phi / 2.0).matrix()),
            Gate::Rz(phi, a) => self.apply_1q(q(a), &crate::algebra::Su2::rotation(Axis::Z, phi / 2.0).matrix()),
            Gate::Rxx(phi, a, b) => self.apply_2q(q(a), q(b), &pauli_pair_exp(Axis::X, phi / 2.0)),
            Gate::Ryy(phi, a, b) => self.apply_2q(q(a), q(b), &pauli_pair_exp(Axis::Y, phi / 2.0)),
            Gate::Cx(c, t) => {
                let (bc, bt) = (bit(self.n, q(c)), bit(self.n, q(t)));
                for i in 0..self.amps.len() {
                    if i & bc != 0 && i & bt == 0 {
                        self.amps.swap(i, i | bt);
                    }
                }
            }
        }
    }

    pub fn apply_gates(&mut self, gates: &GateSeq) {
        for g in gates.gates() {
            self.apply_gate(g);
        }
    }

    /// `⟨ψ|φ⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }
}

/// `exp(-iθ P⊗P)` for `P` = X or Y.
fn pauli_pair_exp(axis: Axis, theta: f64) -> [[Complex64; 4]; 4] {
    let (s, c) = libm::sincos(theta);
    let c = Complex64::new(c, 0.0);
    let mut m = [[ZERO; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c;
    }
    // X⊗X has ones on the anti-diagonal; Y⊗Y has (-1, 1, 1, -1) there.
    let signs = match axis {
        Axis::X => [1.0, 1.0, 1.0, 1.0],
        _ => [-1.0, 1.0, 1.0, -1.0],
    };
    for i in 0..4 {
        m[i][3 - i] = Complex64::new(0.0, -s * signs[i]);
    }
    m
}

/// Evolves `state` through structures given in time order (`parts[0]` acts first).
pub fn evolve(state: &mut StateVector, parts: &[&dyn BlockSequence]) -> Result<()> {
    for p in parts {
        if p.n_qubits() != state.n {
            return Err(Error::DimensionMismatch { expected: state.n, got: p.n_qubits() });
        }
        state.apply_sequence(*p);
    }
    Ok(())
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// A dense `2ⁿ × 2ⁿ` unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryOracle {
    pub n: usize,
    pub matrix: DMatrix<Complex64>,
}

impl UnitaryOracle {
    /// `‖U†U − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.matrix.nrows();
        frobenius_distance(&(self.matrix.adjoint() * &self.matrix), &DMatrix::identity(dim, dim))
    }

    pub fn phase_distance(&self, other: &UnitaryOracle) -> f64 {
        phase_distance(&self.matrix, &other.matrix)
    }
}

fn columns(n: usize, cap: usize, mut apply: impl FnMut(&mut StateVector) -> Result<()>) -> Result<UnitaryOracle> {
    check_cap(n, cap)?;
    let dim = 1 << n;
    let mut u = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut s = StateVector::basis(n, col);
        apply(&mut s)?;
        u.set_column(col, &DVector::from_vec(s.amps));
    }
    Ok(UnitaryOracle { n, matrix: u })
}

/// Dense unitary of structures given in time order, column by column.
/// An empty list gives the identity.
pub fn build_unitary(n: usize, parts: &[&dyn BlockSequence], cap: usize) -> Result<UnitaryOracle> {
    columns(n, cap, |s| evolve(s, parts))
}

/// Dense unitary of a gate sequence.
pub fn gates_unitary(gates: &GateSeq, cap: usize) -> Result<UnitaryOracle> {
    columns(gates.n_qubits(), cap, |s| {
        s.apply_gates(gates);
        Ok(())
    })
}

/// `min_φ ‖U − e^{iφ}V‖_F`, with the minimizing phase `φ = arg tr(V†U)`.
pub fn phase_distance(u: &DMatrix<Complex64>, v: &DMatrix<Complex64>) -> f64 {
    let overlap: Complex64 = v.iter().zip(u.iter()).map(|(a, b)| a.conj() * b).sum();
    let phase = if overlap.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { overlap / overlap.norm() };
    libm::sqrt(u.iter().zip(v.iter()).map(|(a, b)| (a - phase * b).norm_sqr()).sum())
}

/// Plain Frobenius distance.
pub fn frobenius_distance(u: &DMatrix<Complex64>, v: &DMatrix<Complex64>) -> f64 {
    libm::sqrt(u.iter().zip(v.iter()).map(|(a, b)| (a - b).norm_sqr()).sum())
}

/// Mean single-site magnetization `(1/n) Σ_q ⟨Z_q⟩`.
pub fn magnetization(state: &StateVector) -> f64 {
    let n = state.n;
    let mut acc = 0.0;
    for (i, a) in state.amps.iter().enumerate() {
        let down = i.count_ones() as f64;
        acc += a.norm_sqr() * (n as f64 - 2.0 * down);
    }
    acc / n as f64
}

/// A weighted Pauli string; qubits are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub coeff: f64,
    pub ops: Vec<(usize, Axis)>,
}

/// Dense Hermitian matrix of `Σ coeff · P`.
pub fn pauli_sum_matrix(n: usize, terms: &[PauliTerm], cap: usize) -> Result<DMatrix<Complex64>> {
    check_cap(n, cap)?;
    let dim = 1 << n;
    let mut h = DMatrix::zeros(dim, dim);
    for t in terms {
        for col in 0..dim {
            // P|col⟩ = phase · |row⟩
            let mut row = col;
            let mut phase = Complex64::new(t.coeff, 0.0);
            for &(q, axis) in &t.ops {
                let b = bit(n, q);
                let down = col & b != 0;
                match axis {
                    Axis::X => row ^= b,
                    Axis::Y => {
                        row ^= b;
                        phase *= if down { Complex64::new(0.0, -1.0) } else { Complex64::new(0.0, 1.0) };
                    }
                    Axis::Z => {
                        if down {
                            phase = -phase;
                        }
                    }
                }
            }
            h[(row, col)] += phase;
        }
    }
    Ok(h)
}

#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    pub state: StateVector,
    /// Distance to the next eigenvalue.
    pub gap: f64,
    /// Whether the lowest level is degenerate to within `1e-8`.
    pub degenerate: bool,
}

/// Lowest eigenpair of a Hermitian matrix.
pub fn ground_state(h: &DMatrix<Complex64>) -> GroundState {
    let n = h.nrows().trailing_zeros() as usize;
    let eig = SymmetricEigen::new(h.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let e0 = eig.eigenvalues[order[0]];
    let gap = order.get(1).map_or(f64::INFINITY, |&k| eig.eigenvalues[k] - e0);
    let amps = eig.eigenvectors.column(order[0]).iter().copied().collect();
    GroundState { energy: e0, state: StateVector { n, amps }, gap, degenerate: gap < 1e-8 }
}

/// Ground state of a model's Hamiltonian.
pub fn model_ground_state(model: &ModelSpec, cap: usize) -> Result<GroundState> {
    let h = pauli_sum_matrix(model.n_qubits(), &model.pauli_terms(), cap)?;
    Ok(ground_state(&h))
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn spectrum(h: &DMatrix<Complex64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(h.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `exp(-iHt)` for Hermitian `H`, via its eigendecomposition.
pub fn expm_hermitian(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(h.clone());
    let q = &eig.eigenvectors;
    let phases = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&e| {
            let (s, c) = libm::sincos(-e * t);
            Complex64::new(c, s)
        }),
    );
    let mut scaled = q.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    scaled * q.adjoint()
}

/// `U|ψ⟩` for a dense matrix.
pub fn apply_dense(u: &DMatrix<Complex64>, state: &StateVector) -> StateVector {
    let v = u * DVector::from_column_slice(&state.amps);
    StateVector { n: state.n, amps: v.iter().copied().collect() }
}
