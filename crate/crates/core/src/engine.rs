//! Fusion, turnover and the structure-level merge algorithms.
//!
//! Logical counters follow the closed-form operation counts. A logical
//! operation whose outcome is structurally trivial (one operand is an exact
//! identity) is resolved without touching the kernels and does not count as
//! effective.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::AddAssign;

use crate::algebra::su2::{euler_extract, Su2};
use crate::algebra::tfxy::{tfxy_turnover, tfxy_turnover_up};
use crate::circuit::{
    Block, BlockKind, BlockSequence, Cascade, Payload, Square, Triangle, Zigzag,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub turnovers: u64,
    pub fusions: u64,
    /// Turnovers that reached a kernel because no operand was an identity.
    pub effective_turnovers: u64,
    /// Fusions of two non-identity blocks.
    pub effective_fusions: u64,
    /// Single-qubit su(2) turnover kernel invocations, including those inside
    /// TFXY turnovers.
    pub su2_kernel_turnovers: u64,
}

impl AddAssign for OpCounter {
    fn add_assign(&mut self, o: OpCounter) {
        self.turnovers += o.turnovers;
        self.fusions += o.fusions;
        self.effective_turnovers += o.effective_turnovers;
        self.effective_fusions += o.effective_fusions;
        self.su2_kernel_turnovers += o.su2_kernel_turnovers;
    }
}

/// `n(n²−1)/6`: turnovers to merge two height-`n` triangles.
pub fn triangle_merge_turnovers(n: u64) -> u64 {
    n * (n * n - 1) / 6
}

fn rotation_matrix(b: &Block) -> Su2 {
    match b.payload() {
        Payload::Rotation(u) => *u,
        Payload::Tfxy(_) => unreachable!("caller checked the kind"),
    }
}

/// Operator product of two blocks with the same index.
pub fn fuse(a: &Block, b: &Block, counter: &mut OpCounter) -> Result<Block> {
    if a.index() != b.index() {
        return Err(Error::NotATurnoverShape(a.index().get(), b.index().get(), b.index().get()));
    }
    if a.kind() != b.kind() {
        return Err(Error::MappingMismatch);
    }
    counter.fusions += 1;
    if a.is_identity() {
        return Ok(*b);
    }
    if b.is_identity() {
        return Ok(*a);
    }
    counter.effective_fusions += 1;
    Ok(match (a.payload(), b.payload()) {
        (Payload::Tfxy(p), Payload::Tfxy(q)) => Block::tfxy(a.index(), p.fuse(q)),
        _ => {
            let theta = a.angle().unwrap() + b.angle().unwrap();
            Block::rotation(a.index(), a.kind(), crate::algebra::wrap_angle(theta))
        }
    })
}

/// Rewrites `l · m · r`, where `l` and `r` share index `i` and `m` sits at
/// `i ± 1`, as `A · B · C` with `A`, `C` at `m`'s index and `B` at `i`.
pub fn turnover(l: &Block, m: &Block, r: &Block, counter: &mut OpCounter) -> Result<[Block; 3]> {
    let (i, j, k) = (l.index().get(), m.index().get(), r.index().get());
    if i != k || i.abs_diff(j) != 1 {
        return Err(Error::NotATurnoverShape(i, j, k));
    }
    if l.kind() != r.kind() {
        return Err(Error::MappingMismatch);
    }
    let tfxy = l.kind() == BlockKind::Tfxy;
    if tfxy != (m.kind() == BlockKind::Tfxy) {
        return Err(Error::MappingMismatch);
    }
    if !tfxy && l.kind().axis() == m.kind().axis() {
        return Err(Error::NoSu2Structure(l.kind(), m.kind()));
    }
    counter.turnovers += 1;

    let outer = m.index();
    let id_outer = Block::identity(outer, m.kind());
    if r.is_identity() {
        return Ok([id_outer, *l, *m]);
    }
    if m.is_identity() {
        let mut scratch = OpCounter::default();
        return Ok([id_outer, fuse(l, r, &mut scratch)?, id_outer]);
    }
    if l.is_identity() {
        return Ok([*m, *r, id_outer]);
    }
    counter.effective_turnovers += 1;

    if tfxy {
        let (p, q, s) = (
            l.tfxy_payload().unwrap(),
            m.tfxy_payload().unwrap(),
            r.tfxy_payload().unwrap(),
        );
        let out = if j > i {
            tfxy_turnover(p, q, s, counter)
        } else {
            tfxy_turnover_up(p, q, s, counter)
        };
        return Ok([
            Block::tfxy(outer, out[0]),
            Block::tfxy(l.index(), out[1]),
            Block::tfxy(outer, out[2]),
        ]);
    }

    counter.su2_kernel_turnovers += 1;
    let u = rotation_matrix(l) * rotation_matrix(m) * rotation_matrix(r);
    let t = euler_extract(&u, m.kind().axis().unwrap());
    let mut first = t.angles[0];
    if t.sign < 0.0 {
        first += PI;
    }
    Ok([
        Block::rotation(outer, m.kind(), first),
        Block::rotation(l.index(), l.kind(), t.angles[1]),
        Block::rotation(outer, m.kind(), t.angles[2]),
    ])
}

/// Lemma-style pass: `C_{lo,hi} · B_m = B_{m+1} · C'_{lo,hi}` for `lo ≤ m < hi`.
/// Costs exactly one turnover.
fn pass_through_in_place(c: &mut Cascade, b: Block, counter: &mut OpCounter) -> Result<Block> {
    let m = b.index().get() as usize;
    if m < c.lo() || m >= c.hi() {
        return Err(Error::CascadeRange { index: m as u32, lo: c.lo() as u32, hi: c.hi() as u32 });
    }
    let [out, bm, bm1] = turnover(c.block(m), c.block(m + 1), &b, counter)?;
    *c.block_mut(m) = bm;
    *c.block_mut(m + 1) = bm1;
    Ok(out)
}

pub fn pass_through_cascade(c: &Cascade, b: &Block, counter: &mut OpCounter) -> Result<(Block, Cascade)> {
    if c.mapping().kind_at(b.index()) != b.kind() {
        return Err(Error::MappingMismatch);
    }
    let mut c = c.clone();
    let out = pass_through_in_place(&mut c, *b, counter)?;
    Ok((out, c))
}

/// `T · B_m` as a triangle: `n − m` turnovers and one fusion.
pub(crate) fn merge_block_in_place(t: &mut Triangle, b: Block, counter: &mut OpCounter) -> Result<()> {
    let n = t.height();
    t.mapping().check(&b, n)?;
    let m = b.index().get() as usize;
    let mut moving = b;
    for lo in 1..=(n - m) {
        moving = pass_through_in_place(t.cascade_mut(lo), moving, counter)?;
    }
    let target = t.cascade_mut(n - m + 1).block_mut(n);
    *target = fuse(target, &moving, counter)?;
    Ok(())
}

pub fn merge_block_into_triangle(t: &Triangle, b: &Block, counter: &mut OpCounter) -> Result<Triangle> {
    let mut t = t.clone();
    merge_block_in_place(&mut t, *b, counter)?;
    Ok(t)
}

fn check_compatible<A: BlockSequence + ?Sized, B: BlockSequence + ?Sized>(a: &A, b: &B) -> Result<()> {
    if a.mapping() != b.mapping() {
        return Err(Error::MappingMismatch);
    }
    if a.height() != b.height() {
        return Err(Error::HeightMismatch(a.height(), b.height()));
    }
    Ok(())
}

/// `T · L` for a Trotter step `L`: `n(n−1)/2` turnovers.
pub fn merge_zigzag_into_triangle(t: &Triangle, z: &Zigzag, counter: &mut OpCounter) -> Result<Triangle> {
    check_compatible(t, z)?;
    let mut t = t.clone();
    for b in z.blocks() {
        merge_block_in_place(&mut t, *b, counter)?;
    }
    Ok(t)
}

/// `T₁ · T₂`, merging the blocks of `T₂` in operator order: `n(n²−1)/6`
/// turnovers and `n(n+1)/2` fusions.
pub fn merge_triangles(t1: &Triangle, t2: &Triangle, counter: &mut OpCounter) -> Result<Triangle> {
    check_compatible(t1, t2)?;
    let mut t = t1.clone();
    for b in t2.blocks() {
        merge_block_in_place(&mut t, *b, counter)?;
    }
    Ok(t)
}

/// Compresses `steps` given in time order (`steps[0]` acts first), i.e. the
/// operator `L_r ⋯ L_2 L_1`, into one triangle with `(r−1)·n(n−1)/2` turnovers.
pub fn compress_time_dependent(steps: &[Zigzag], counter: &mut OpCounter) -> Result<Triangle> {
    let (last, earlier) = steps.split_last().ok_or(Error::EmptySteps)?;
    for s in earlier {
        check_compatible(last, s)?;
    }
    let mut t = Triangle::from_zigzag(last);
    for s in earlier.iter().rev() {
        for b in s.blocks() {
            merge_block_in_place(&mut t, *b, counter)?;
        }
    }
    Ok(t)
}

/// Compresses `L^r` by repeated squaring of triangles.
pub fn compress_time_independent(step: &Zigzag, r: u64, counter: &mut OpCounter) -> Result<Triangle> {
    if r == 0 {
        return Err(Error::ZeroRepetitions);
    }
    let mut base = Triangle::from_zigzag(step);
    let mut acc: Option<Triangle> = None;
    let mut r = r;
    loop {
        if r & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => merge_triangles(&a, &base, counter)?,
            });
        }
        r >>= 1;
        if r == 0 {
            break;
        }
        base = merge_triangles(&base, &base, counter)?;
    }
    Ok(acc.expect("r ≥ 1"))
}

/// Moves cascade `mov` (on the left) through `fixed` (on the right) when
/// `fixed.lo() < mov.lo()` and `mov.hi() ≤ fixed.hi()`:
/// `C_{a,b} · C_{i,j} = C'_{i,j} · C'_{a−1,b−1}`, one turnover per block of `mov`.
fn pass_cascade(mov: &Cascade, fixed: &mut Cascade, counter: &mut OpCounter) -> Result<Cascade> {
    let mut out = Vec::with_capacity(mov.as_slice().len());
    for b in mov.as_slice().iter().rev() {
        let k = b.index().get() as usize;
        let [a, bk, c] = turnover(b, fixed.block(k - 1), fixed.block(k), counter)?;
        *fixed.block_mut(k - 1) = a;
        *fixed.block_mut(k) = bk;
        out.push(c);
    }
    out.reverse();
    let mut moved = mov.clone();
    moved.shift_down(out);
    Ok(moved)
}

/// Rearranges a triangle into the square layout
/// `C_{n−1,n} C_{n−3,n} ⋯ · C_{1,n} C_{1,n−2} ⋯` (exact shape from
/// [`crate::circuit::square_shape`]). Cascades `C_{m,n}` for
/// `m = n, n−2, …` are shifted right past the remaining ones; each shifted
/// block costs one turnover.
pub fn triangle_to_square(t: &Triangle, counter: &mut OpCounter) -> Result<Square> {
    let n = t.height();
    let mapping = t.mapping();
    let mut cs = t.clone().into_cascades();
    let mut boundary = cs.len();
    let stop = if n % 2 == 1 { 3 } else { 2 };
    let mut m = n;
    while m >= stop {
        let mut pos = cs.iter().position(|c| c.lo() == m && c.hi() == n).expect("triangle cascade");
        while pos + 1 < boundary {
            let mov = cs[pos].clone();
            let moved = pass_cascade(&mov, &mut cs[pos + 1], counter)?;
            cs[pos] = moved;
            cs.swap(pos, pos + 1);
            pos += 1;
        }
        boundary = pos;
        m -= 2;
    }
    Ok(Square::from_cascades(mapping, n, cs))
}
