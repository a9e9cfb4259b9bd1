use alloc::string::String;

use crate::circuit::BlockKind;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("block index must be a positive integer")]
    ZeroIndex,
    #[error("block index {index} outside 1..={max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("duplicate block index {0}")]
    DuplicateIndex(u32),
    #[error("blocks or structures come from different model mappings")]
    MappingMismatch,
    #[error("block kind {kind:?} is not valid at index {index} under this mapping")]
    KindMismatch { index: u32, kind: BlockKind },
    #[error("structure heights differ: {0} vs {1}")]
    HeightMismatch(usize, usize),
    #[error("block kinds {0:?} and {1:?} do not form an su(2) triple")]
    NoSu2Structure(BlockKind, BlockKind),
    #[error("turnover needs indices (i, i±1, i), got ({0}, {1}, {2})")]
    NotATurnoverShape(u32, u32, u32),
    #[error("cannot shift block {index} through cascade {lo}..={hi}")]
    CascadeRange { index: u32, lo: u32, hi: u32 },
    #[error("compression needs at least one Trotter step")]
    EmptySteps,
    #[error("repetition count must be at least 1")]
    ZeroRepetitions,
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("{n} qubits exceeds the dense cap of {cap}; use the state-vector path")]
    CapExceeded { n: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}
