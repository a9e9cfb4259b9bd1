use crate::algebra::su2::{Axis, Su2};
use crate::algebra::tfxy::TfxyPayload;
use crate::error::{Error, Result};

/// 1-based block position along the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockIndex(u32);

impl BlockIndex {
    pub fn new(i: u32) -> Result<BlockIndex> {
        if i == 0 {
            Err(Error::ZeroIndex)
        } else {
            Ok(BlockIndex(i))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// `exp(-iθ X⊗X)` on a bond.
    Xx,
    /// `exp(-iθ Y⊗Y)` on a bond.
    Yy,
    /// `exp(-iθ Z)` on a site.
    Z,
    /// A general element of the two-qubit TFXY group on a bond.
    Tfxy,
}

impl BlockKind {
    /// Axis used for the su(2) payload; adjacent kinds in every mapping differ here.
    pub fn axis(self) -> Option<Axis> {
        match self {
            BlockKind::Xx => Some(Axis::X),
            BlockKind::Yy | BlockKind::Z => Some(Axis::Z),
            BlockKind::Tfxy => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Payload {
    /// One-parameter rotation stored as the matrix `R_axis(θ)` of the kind's axis.
    Rotation(Su2),
    Tfxy(TfxyPayload),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Block {
    index: BlockIndex,
    kind: BlockKind,
    payload: Payload,
}

impl Block {
    /// A one-parameter block `exp(-iθ P)` of the given kind.
    pub fn rotation(index: BlockIndex, kind: BlockKind, theta: f64) -> Block {
        let axis = kind.axis().expect("rotation blocks need a Pauli kind");
        Block { index, kind, payload: Payload::Rotation(Su2::rotation(axis, theta)) }
    }

    pub fn tfxy(index: BlockIndex, payload: TfxyPayload) -> Block {
        Block { index, kind: BlockKind::Tfxy, payload: Payload::Tfxy(payload) }
    }

    pub fn identity(index: BlockIndex, kind: BlockKind) -> Block {
        let payload = match kind {
            BlockKind::Tfxy => Payload::Tfxy(TfxyPayload::identity()),
            _ => Payload::Rotation(Su2::identity()),
        };
        Block { index, kind, payload }
    }

    pub fn index(&self) -> BlockIndex {
        self.index
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    /// Rotation angle of a one-parameter block, `None` for TFXY blocks.
    pub fn angle(&self) -> Option<f64> {
        match (&self.payload, self.kind.axis()) {
            (Payload::Rotation(u), Some(axis)) => Some(u.rotation_angle(axis)),
            _ => None,
        }
    }

    pub fn tfxy_payload(&self) -> Option<&TfxyPayload> {
        match &self.payload {
            Payload::Tfxy(p) => Some(p),
            Payload::Rotation(_) => None,
        }
    }

    /// Exact structural identity; never tolerance-based.
    pub fn is_identity(&self) -> bool {
        match &self.payload {
            Payload::Rotation(u) => u.is_identity(),
            Payload::Tfxy(p) => p.is_identity(),
        }
    }
}

/// Mapping family a kind belongs to; `Xx` is shared by Kitaev and TFIM chains.
fn compatible(a: BlockKind, b: BlockKind) -> bool {
    use BlockKind::*;
    match (a, b) {
        (Tfxy, Tfxy) => true,
        (Tfxy, _) | (_, Tfxy) => false,
        (Yy, Z) | (Z, Yy) => false,
        _ => true,
    }
}

/// Whether two blocks commute as operators, decided from indices and kinds only.
pub fn commutes(a: &Block, b: &Block) -> Result<bool> {
    if !compatible(a.kind, b.kind) {
        return Err(Error::MappingMismatch);
    }
    let (i, j) = (a.index.get(), b.index.get());
    if i.abs_diff(j) > 1 {
        return Ok(true);
    }
    Ok(i == j && a.kind != BlockKind::Tfxy && a.kind == b.kind)
}

/// Qubits a block acts on (1-based, qubit 1 is the most significant bit).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    Site(usize),
    Bond(usize),
}

/// How block indices map to kinds and qubits for a model family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockMapping {
    /// Bond `i` carries block `i`; odd bonds have kind `odd`, even bonds the other of `Xx`/`Yy`.
    Kitaev { odd: BlockKind },
    /// Block `2q−1` is `Z` on site `q`, block `2q` is `Xx` on bond `q`.
    Tfim,
    /// Bond `i` carries a TFXY block.
    Tfxy,
}

impl BlockMapping {
    pub const KITAEV_ODD_XX: BlockMapping = BlockMapping::Kitaev { odd: BlockKind::Xx };
    pub const KITAEV_ODD_YY: BlockMapping = BlockMapping::Kitaev { odd: BlockKind::Yy };

    pub fn kind_at(self, index: BlockIndex) -> BlockKind {
        let odd = index.get() % 2 == 1;
        match self {
            BlockMapping::Kitaev { odd: k } => {
                let other = if k == BlockKind::Xx { BlockKind::Yy } else { BlockKind::Xx };
                if odd {
                    k
                } else {
                    other
                }
            }
            BlockMapping::Tfim => {
                if odd {
                    BlockKind::Z
                } else {
                    BlockKind::Xx
                }
            }
            BlockMapping::Tfxy => BlockKind::Tfxy,
        }
    }

    pub fn height(self, n_qubits: usize) -> usize {
        match self {
            BlockMapping::Tfim => 2 * n_qubits - 1,
            _ => n_qubits - 1,
        }
    }

    pub fn n_qubits(self, height: usize) -> usize {
        match self {
            BlockMapping::Tfim => height.div_ceil(2),
            _ => height + 1,
        }
    }

    pub fn support(self, index: BlockIndex) -> Support {
        let i = index.get() as usize;
        match self {
            BlockMapping::Tfim if i % 2 == 1 => Support::Site(i.div_ceil(2)),
            BlockMapping::Tfim => Support::Bond(i / 2),
            _ => Support::Bond(i),
        }
    }

    pub fn check(self, block: &Block, height: usize) -> Result<()> {
        let i = block.index.get();
        if i as usize > height {
            return Err(Error::IndexOutOfRange { index: i, max: height as u32 });
        }
        if self.kind_at(block.index) != block.kind {
            return Err(Error::KindMismatch { index: i, kind: block.kind });
        }
        Ok(())
    }
}
