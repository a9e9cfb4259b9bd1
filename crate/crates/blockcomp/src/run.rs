//! Compile and verify drivers shared by the binary and tests.

use blockcomp_core::algebra::{TfxyAngles, TfxyPayload};
use blockcomp_core::circuit::{Block, BlockIndex, BlockKind, Zigzag};
use blockcomp_core::export::{lower_to_gates, GateSeq, LoweringStyle};
use blockcomp_core::models::{Channel, Couplings, Family, Schedule};
use blockcomp_core::pipeline::{compile, CompressionPath, Compiled, Target};
use blockcomp_core::sim::{build_unitary, DEFAULT_DENSE_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Problem;
use crate::error::CliError;
use crate::report::StatsRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub target: Target,
    pub path: CompressionPath,
    pub style: LoweringStyle,
}

impl Default for Options {
    fn default() -> Self {
        Options { target: Target::Native, path: CompressionPath::Auto, style: LoweringStyle::Cnot }
    }
}

pub fn path_name(p: CompressionPath) -> &'static str {
    match p {
        CompressionPath::Auto => "auto",
        CompressionPath::TimeDependent => "td",
        CompressionPath::TimeIndependent => "ti",
    }
}

pub fn style_name(s: LoweringStyle) -> &'static str {
    match s {
        LoweringStyle::Rotations => "rotations",
        LoweringStyle::Cnot => "cnot",
    }
}

pub fn target_name(t: Target) -> &'static str {
    match t {
        Target::Native => "native",
        Target::Tfxy => "tfxy",
    }
}

pub struct Output {
    pub compiled: Compiled,
    pub gates: GateSeq,
    pub stats: StatsRecord,
}

/// Compresses the problem, lowers the square layout and tallies its stats.
pub fn compile_problem(p: &Problem, opts: Options) -> Result<Output, CliError> {
    let compiled = compile(&p.model, &p.schedule, p.dt, p.steps, opts.target, opts.path)?;
    let gates = lower_to_gates(&compiled.square_parts(), opts.style)?;
    let mut stats = StatsRecord {
        model: p.model.family().name().to_string(),
        n: p.model.n_qubits(),
        style: style_name(opts.style).to_string(),
        target: target_name(opts.target).to_string(),
        path: path_name(compiled.path).to_string(),
        steps: p.steps,
        time: p.dt * p.steps as f64,
        cnots: 0,
        rotations: 0,
        depth: 0,
        gates: 0,
        turnovers: 0,
        fusions: 0,
        effective_turnovers: 0,
        effective_fusions: 0,
        rearrangement_turnovers: 0,
    };
    stats.fill(&gates.stats(), &compiled.compression, &compiled.rearrangement);
    Ok(Output { compiled, gates, stats })
}

/// Uniform couplings in `[-1, 1]` on every channel the family allows.
pub fn random_couplings(family: Family, n: usize, rng: &mut impl Rng) -> Couplings {
    let mut c = Couplings::zeros(n);
    for ch in Channel::ALL {
        if !family.allows(ch) {
            continue;
        }
        for (i, v) in c.channel_mut(ch).iter_mut().enumerate() {
            let skip = family == Family::Kitaev
                && ((ch == Channel::Xx && i % 2 == 1) || (ch == Channel::Yy && i % 2 == 0));
            if !skip {
                *v = rng.gen_range(-1.0..=1.0);
            }
        }
    }
    c
}

/// The same schedule shape with fresh random couplings at every knot.
pub fn randomize(schedule: &Schedule, family: Family, n: usize, rng: &mut impl Rng) -> Schedule {
    match schedule {
        Schedule::Constant(_) => Schedule::Constant(random_couplings(family, n, rng)),
        Schedule::PiecewiseLinear(k) => {
            Schedule::PiecewiseLinear(k.iter().map(|(t, _)| (*t, random_couplings(family, n, rng))).collect())
        }
        Schedule::Tabulated(k) => {
            Schedule::Tabulated(k.iter().map(|(t, _)| (*t, random_couplings(family, n, rng))).collect())
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    /// Compressed-vs-Trotter distance per trial.
    pub distances: Vec<f64>,
}

impl VerifyReport {
    pub fn max(&self) -> f64 {
        self.distances.iter().copied().fold(0.0, f64::max)
    }
}

/// Compares the compressed square against the uncompressed Trotter product.
///
/// Trial 0 uses the problem's own couplings, later trials draw random ones
/// from a generator seeded with `seed`. `corrupt` appends a stray Z rotation
/// to the compressed circuit, as a negative control.
pub fn verify(
    p: &Problem,
    opts: Options,
    trials: usize,
    seed: u64,
    corrupt: bool,
) -> Result<VerifyReport, CliError> {
    let n = p.model.n_qubits();
    if n > DEFAULT_DENSE_CAP {
        return Err(CliError::Model(blockcomp_core::Error::CapExceeded { n, cap: DEFAULT_DENSE_CAP }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut distances = Vec::with_capacity(trials);
    for trial in 0..trials {
        let schedule = if trial == 0 {
            p.schedule.clone()
        } else {
            randomize(&p.schedule, p.model.family(), n, &mut rng)
        };
        let c = compile(&p.model, &schedule, p.dt, p.steps, opts.target, opts.path)?;
        let mut parts = c.square_parts();
        let stray;
        if corrupt {
            let mapping = parts[0].mapping();
            let height = parts[0].height();
            let idx = BlockIndex::new(1)?;
            let block = match mapping.kind_at(idx) {
                BlockKind::Tfxy => Block::tfxy(idx, TfxyPayload::from_angles(&TfxyAngles { a: 1e-3, ..Default::default() })),
                kind => Block::rotation(idx, kind, 1e-3),
            };
            stray = Zigzag::from_blocks(mapping, height, &[block])?;
            parts.push(&stray);
        }
        let compressed = build_unitary(n, &parts, DEFAULT_DENSE_CAP)?;
        let reference = build_unitary(n, &c.trotter_parts(), DEFAULT_DENSE_CAP)?;
        distances.push(compressed.phase_distance(&reference));
    }
    Ok(VerifyReport { distances })
}
