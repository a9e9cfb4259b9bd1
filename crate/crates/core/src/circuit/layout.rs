//! Block structures. Every structure is an operator product read left to
//! right, so its rightmost block acts on the state first.

use alloc::vec::Vec;

use super::block::{Block, BlockIndex, BlockMapping};
use crate::error::{Error, Result};

fn ix(i: usize) -> BlockIndex {
    BlockIndex::new(i as u32).expect("structure indices start at 1")
}

/// Anything that is an ordered product of blocks under one mapping.
pub trait BlockSequence {
    fn mapping(&self) -> BlockMapping;
    /// Largest block index the structure may hold.
    fn height(&self) -> usize;
    /// Blocks in operator order (leftmost first).
    fn blocks(&self) -> Vec<&Block>;

    fn n_qubits(&self) -> usize {
        self.mapping().n_qubits(self.height())
    }

    fn block_count(&self) -> usize {
        self.blocks().len()
    }
}

/// `C_{lo,hi} = B_lo B_{lo+1} ⋯ B_hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cascade {
    mapping: BlockMapping,
    lo: usize,
    blocks: Vec<Block>,
}

impl Cascade {
    pub fn identity(mapping: BlockMapping, lo: usize, hi: usize) -> Cascade {
        assert!(lo >= 1 && lo <= hi);
        let blocks = (lo..=hi).map(|i| Block::identity(ix(i), mapping.kind_at(ix(i)))).collect();
        Cascade { mapping, lo, blocks }
    }

    /// Builds a cascade from blocks with consecutive ascending indices.
    pub fn from_blocks(mapping: BlockMapping, blocks: Vec<Block>) -> Result<Cascade> {
        let lo = blocks.first().ok_or(Error::EmptySteps)?.index().get() as usize;
        for (k, b) in blocks.iter().enumerate() {
            if b.index().get() as usize != lo + k {
                return Err(Error::IndexOutOfRange {
                    index: b.index().get(),
                    max: (lo + k) as u32,
                });
            }
            mapping.check(b, usize::MAX)?;
        }
        Ok(Cascade { mapping, lo, blocks })
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.lo + self.blocks.len() - 1
    }

    pub fn mapping(&self) -> BlockMapping {
        self.mapping
    }

    pub fn block(&self, index: usize) -> &Block {
        &self.blocks[index - self.lo]
    }

    pub(crate) fn block_mut(&mut self, index: usize) -> &mut Block {
        &mut self.blocks[index - self.lo]
    }

    pub fn as_slice(&self) -> &[Block] {
        &self.blocks
    }

    pub(crate) fn shift_down(&mut self, new_blocks: Vec<Block>) {
        self.lo -= 1;
        self.blocks = new_blocks;
    }
}

/// One Trotter step laid out as odd blocks ascending, then even blocks ascending.
/// Every index `1..=height` is present, missing ones as identities.
#[derive(Clone, Debug, PartialEq)]
pub struct Zigzag {
    mapping: BlockMapping,
    height: usize,
    blocks: Vec<Block>,
}

impl Zigzag {
    pub fn from_blocks(mapping: BlockMapping, height: usize, blocks: &[Block]) -> Result<Zigzag> {
        if height == 0 {
            return Err(Error::IndexOutOfRange { index: 0, max: 0 });
        }
        let mut slots: Vec<Option<Block>> = alloc::vec![None; height];
        for b in blocks {
            mapping.check(b, height)?;
            let slot = &mut slots[b.index().get() as usize - 1];
            if slot.is_some() {
                return Err(Error::DuplicateIndex(b.index().get()));
            }
            *slot = Some(*b);
        }
        let order = (1..=height).step_by(2).chain((2..=height).step_by(2));
        let blocks = order
            .map(|i| slots[i - 1].unwrap_or_else(|| Block::identity(ix(i), mapping.kind_at(ix(i)))))
            .collect();
        Ok(Zigzag { mapping, height, blocks })
    }

    /// The block at a given index.
    pub fn block(&self, index: usize) -> &Block {
        let odd_count = self.height.div_ceil(2);
        let pos = if index % 2 == 1 { index / 2 } else { odd_count + index / 2 - 1 };
        &self.blocks[pos]
    }
}

impl BlockSequence for Zigzag {
    fn mapping(&self) -> BlockMapping {
        self.mapping
    }
    fn height(&self) -> usize {
        self.height
    }
    fn blocks(&self) -> Vec<&Block> {
        self.blocks.iter().collect()
    }
}

/// `T_n = C_{n,n} C_{n−1,n} ⋯ C_{1,n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    mapping: BlockMapping,
    height: usize,
    /// `cascades[j]` is `C_{n−j,n}`.
    cascades: Vec<Cascade>,
}

impl Triangle {
    pub fn identity(mapping: BlockMapping, height: usize) -> Triangle {
        let cascades = (1..=height).rev().map(|lo| Cascade::identity(mapping, lo, height)).collect();
        Triangle { mapping, height, cascades }
    }

    /// Embeds a zigzag at zero cost: `B_1` and the even blocks fill `C_{1,n}`,
    /// odd blocks from 3 upwards fill `C_{2,n}`.
    pub fn from_zigzag(z: &Zigzag) -> Triangle {
        let mut t = Triangle::identity(z.mapping, z.height);
        for i in 1..=z.height {
            let lo = if i % 2 == 1 && i >= 3 { 2 } else { 1 };
            *t.cascade_mut(lo).block_mut(i) = *z.block(i);
        }
        t
    }

    /// The cascade `C_{lo,n}`.
    pub fn cascade(&self, lo: usize) -> &Cascade {
        &self.cascades[self.height - lo]
    }

    pub(crate) fn cascade_mut(&mut self, lo: usize) -> &mut Cascade {
        &mut self.cascades[self.height - lo]
    }

    /// Cascades in operator order, `C_{n,n}` first.
    pub fn cascades(&self) -> &[Cascade] {
        &self.cascades
    }

    pub(crate) fn into_cascades(self) -> Vec<Cascade> {
        self.cascades
    }
}

impl BlockSequence for Triangle {
    fn mapping(&self) -> BlockMapping {
        self.mapping
    }
    fn height(&self) -> usize {
        self.height
    }
    fn blocks(&self) -> Vec<&Block> {
        self.cascades.iter().flat_map(|c| c.blocks.iter()).collect()
    }
}

/// Depth-optimal layout: cascades of the form `C_{k,n}` followed by `C_{1,k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Square {
    mapping: BlockMapping,
    height: usize,
    cascades: Vec<Cascade>,
}

impl Square {
    pub(crate) fn from_cascades(mapping: BlockMapping, height: usize, cascades: Vec<Cascade>) -> Square {
        Square { mapping, height, cascades }
    }

    pub fn cascades(&self) -> &[Cascade] {
        &self.cascades
    }

    /// `(lo, hi)` of each cascade in operator order.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.cascades.iter().map(|c| (c.lo(), c.hi())).collect()
    }
}

impl BlockSequence for Square {
    fn mapping(&self) -> BlockMapping {
        self.mapping
    }
    fn height(&self) -> usize {
        self.height
    }
    fn blocks(&self) -> Vec<&Block> {
        self.cascades.iter().flat_map(|c| c.blocks.iter()).collect()
    }
}

/// Expected square shape for height `n`, as `(lo, hi)` pairs in operator order.
pub fn square_shape(n: usize) -> Vec<(usize, usize)> {
    let top = if n % 2 == 1 { n } else { n - 1 };
    let mut shape: Vec<(usize, usize)> = (1 + n % 2..n).rev().step_by(2).map(|k| (k, n)).collect();
    shape.extend((1..=top).rev().step_by(2).map(|k| (1, k)));
    shape
}

/// Circuit depth in block layers: greedy as-soon-as-possible scheduling where
/// blocks whose indices differ by at most one cannot share a layer.
pub fn depth<S: BlockSequence + ?Sized>(seq: &S) -> usize {
    let mut layer_of: Vec<usize> = alloc::vec![0; seq.height() + 2];
    let mut depth = 0;
    for b in seq.blocks().into_iter().rev() {
        let i = b.index().get() as usize;
        let layer = 1 + layer_of[i - 1].max(layer_of[i]).max(layer_of[i + 1]);
        layer_of[i] = layer;
        depth = depth.max(layer);
    }
    depth
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::BlockKind;

    #[test]
    fn zigzag_fills_identities_and_orders() {
        let m = BlockMapping::KITAEV_ODD_XX;
        let b = Block::rotation(ix(2), BlockKind::Yy, 0.3);
        let z = Zigzag::from_blocks(m, 4, &[b]).unwrap();
        let order: Vec<u32> = z.blocks().iter().map(|b| b.index().get()).collect();
        assert_eq!(order, [1, 3, 2, 4]);
        assert_eq!(*z.block(2), b);
        assert!(z.block(3).is_identity());
        assert_eq!(depth(&z), 2);
    }

    #[test]
    fn zigzag_validation() {
        let m = BlockMapping::KITAEV_ODD_XX;
        let b = Block::rotation(ix(2), BlockKind::Yy, 0.3);
        assert_eq!(Zigzag::from_blocks(m, 4, &[b, b]), Err(Error::DuplicateIndex(2)));
        let far = Block::rotation(ix(5), BlockKind::Xx, 0.3);
        assert!(matches!(Zigzag::from_blocks(m, 4, &[far]), Err(Error::IndexOutOfRange { .. })));
        let wrong = Block::rotation(ix(1), BlockKind::Yy, 0.3);
        assert!(matches!(Zigzag::from_blocks(m, 4, &[wrong]), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn triangle_counts() {
        for n in 1..8 {
            let t = Triangle::identity(BlockMapping::Tfxy, n);
            assert_eq!(t.block_count(), n * (n + 1) / 2);
            assert_eq!(depth(&t), if n == 1 { 1 } else { 2 * n - 1 });
        }
    }

    #[test]
    fn square_shapes() {
        assert_eq!(square_shape(5), [(4, 5), (2, 5), (1, 5), (1, 3), (1, 1)]);
        assert_eq!(square_shape(4), [(3, 4), (1, 4), (1, 3), (1, 1)]);
        assert_eq!(square_shape(1), [(1, 1)]);
        assert_eq!(square_shape(2), [(1, 2), (1, 1)]);
        for n in 1..10 {
            let total: usize = square_shape(n).iter().map(|(a, b)| b - a + 1).sum();
            assert_eq!(total, n * (n + 1) / 2);
        }
    }
}
