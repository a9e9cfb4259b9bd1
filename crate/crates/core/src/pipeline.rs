//! End-to-end compression of a model under a schedule.

use alloc::vec::Vec;

use crate::circuit::{BlockSequence, Square, Triangle, Zigzag};
use crate::engine::{compress_time_dependent, compress_time_independent, triangle_to_square, OpCounter};
use crate::error::{Error, Result};
use crate::models::{embed_as_tfxy, trotter_circuit, trotter_step, ModelSpec, Schedule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CompressionPath {
    /// Time-independent when the schedule is constant, otherwise time-dependent.
    #[default]
    Auto,
    TimeDependent,
    TimeIndependent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Target {
    /// The family's own block mapping.
    #[default]
    Native,
    /// Every family embedded into TFXY blocks.
    Tfxy,
}

#[derive(Clone, Debug)]
pub struct Compiled {
    /// One triangle per commuting chain.
    pub triangles: Vec<Triangle>,
    /// The same operators in square layout.
    pub squares: Vec<Square>,
    /// Operations spent compressing, excluding the square rearrangement.
    pub compression: OpCounter,
    /// Operations spent on the triangle-to-square rearrangement.
    pub rearrangement: OpCounter,
    pub path: CompressionPath,
    /// Uncompressed Trotter steps per chain, in time order.
    pub steps: Vec<Vec<Zigzag>>,
}

impl Compiled {
    pub fn n_qubits(&self) -> usize {
        self.squares[0].n_qubits()
    }

    pub fn square_parts(&self) -> Vec<&dyn BlockSequence> {
        self.squares.iter().map(|s| s as &dyn BlockSequence).collect()
    }

    pub fn triangle_parts(&self) -> Vec<&dyn BlockSequence> {
        self.triangles.iter().map(|s| s as &dyn BlockSequence).collect()
    }

    /// Uncompressed circuit in time order: every step, each step's chains in turn.
    pub fn trotter_parts(&self) -> Vec<&dyn BlockSequence> {
        let r = self.steps[0].len();
        (0..r).flat_map(|k| self.steps.iter().map(move |chain| &chain[k] as &dyn BlockSequence)).collect()
    }
}

/// Trotterizes and compresses `model` under `schedule` for `steps` steps of `dt`.
pub fn compile(
    model: &ModelSpec,
    schedule: &Schedule,
    dt: f64,
    steps: usize,
    target: Target,
    path: CompressionPath,
) -> Result<Compiled> {
    let path = match path {
        CompressionPath::Auto if schedule.is_constant() => CompressionPath::TimeIndependent,
        CompressionPath::Auto => CompressionPath::TimeDependent,
        p => p,
    };
    if path == CompressionPath::TimeIndependent && !schedule.is_constant() {
        return Err(Error::InvalidSchedule("time-independent compression needs a constant schedule".into()));
    }
    let trotter = trotter_circuit(model, schedule, dt, steps)?;
    let per_step: Vec<Vec<Zigzag>> = match target {
        Target::Native => trotter.into_iter().map(|s| s.chains).collect(),
        Target::Tfxy => (0..steps)
            .map(|k| {
                let m = model.with_couplings(schedule.couplings_at(k as f64 * dt))?;
                Ok(embed_as_tfxy(&m, dt)?.chains)
            })
            .collect::<Result<_>>()?,
    };
    let n_chains = per_step[0].len();
    let chains: Vec<Vec<Zigzag>> =
        (0..n_chains).map(|c| per_step.iter().map(|s| s[c].clone()).collect()).collect();

    let mut compression = OpCounter::default();
    let mut rearrangement = OpCounter::default();
    let mut triangles = Vec::with_capacity(n_chains);
    let mut squares = Vec::with_capacity(n_chains);
    for chain in &chains {
        let t = match path {
            CompressionPath::TimeIndependent => compress_time_independent(&chain[0], steps as u64, &mut compression)?,
            _ => compress_time_dependent(chain, &mut compression)?,
        };
        squares.push(triangle_to_square(&t, &mut rearrangement)?);
        triangles.push(t);
    }
    Ok(Compiled { triangles, squares, compression, rearrangement, path, steps: chains })
}

/// The constant-coupling step of a model, for callers that only need one zigzag per chain.
pub fn single_step(model: &ModelSpec, dt: f64, target: Target) -> Result<Vec<Zigzag>> {
    Ok(match target {
        Target::Native => trotter_step(model, dt)?.chains,
        Target::Tfxy => embed_as_tfxy(model, dt)?.chains,
    })
}
