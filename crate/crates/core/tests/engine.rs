mod common;

use blockcomp_core::algebra::{su2_turnover, tfxy_turnover, tfxy_turnover_up, Axis, EulerTriple};
use blockcomp_core::circuit::{
    depth, square_shape, Block, BlockKind, BlockMapping, BlockSequence, Cascade, Triangle,
};
use blockcomp_core::engine::{
    compress_time_dependent, compress_time_independent, fuse, merge_block_into_triangle,
    merge_triangles, merge_zigzag_into_triangle, pass_through_cascade, triangle_merge_turnovers,
    triangle_to_square, turnover, OpCounter,
};
use blockcomp_core::Error;
use common::*;
use proptest::prelude::*;

fn random_triangle(seed: u64, mapping: BlockMapping, height: usize) -> Triangle {
    let mut r = rng(seed);
    let mut t = Triangle::from_zigzag(&random_zigzag(&mut r, mapping, height));
    let mut scratch = OpCounter::default();
    for _ in 0..3 {
        t = merge_zigzag_into_triangle(&t, &random_zigzag(&mut r, mapping, height), &mut scratch).unwrap();
    }
    t
}

#[test]
fn tfxy_turnover_is_exact_and_costs_32() {
    let mut r = rng(7);
    for _ in 0..20 {
        let (a, b, c) = (random_tfxy(&mut r), random_tfxy(&mut r), random_tfxy(&mut r));
        let mut cnt = OpCounter::default();
        let [x, y, z] = tfxy_turnover(&a, &b, &c, &mut cnt);
        assert_eq!(cnt.su2_kernel_turnovers, 32);
        let lhs = embed_4x4(3, 1, a.to_matrix4()) * embed_4x4(3, 2, b.to_matrix4()) * embed_4x4(3, 1, c.to_matrix4());
        let rhs = embed_4x4(3, 2, x.to_matrix4()) * embed_4x4(3, 1, y.to_matrix4()) * embed_4x4(3, 2, z.to_matrix4());
        assert!(dist(&lhs, &rhs) < 1e-12, "{}", dist(&lhs, &rhs));

        let mut cnt = OpCounter::default();
        let [x, y, z] = tfxy_turnover_up(&a, &b, &c, &mut cnt);
        assert_eq!(cnt.su2_kernel_turnovers, 32);
        let lhs = embed_4x4(3, 2, a.to_matrix4()) * embed_4x4(3, 1, b.to_matrix4()) * embed_4x4(3, 2, c.to_matrix4());
        let rhs = embed_4x4(3, 1, x.to_matrix4()) * embed_4x4(3, 2, y.to_matrix4()) * embed_4x4(3, 1, z.to_matrix4());
        assert!(dist(&lhs, &rhs) < 1e-12);
    }
}

#[test]
fn block_turnover_matches_oracle_in_every_mapping() {
    let mut r = rng(11);
    for mapping in MAPPINGS {
        let n = mapping.n_qubits(4);
        for (i, j) in [(2, 3), (3, 2)] {
            let (l, m, rr) = (random_block(&mut r, mapping, i), random_block(&mut r, mapping, j), random_block(&mut r, mapping, i));
            let mut cnt = OpCounter::default();
            let out = turnover(&l, &m, &rr, &mut cnt).unwrap();
            assert_eq!(out[0].index().get() as usize, j);
            assert_eq!(out[1].index().get() as usize, i);
            let d = |b: &Block| dense_block(n, mapping, b);
            let lhs = d(&l) * d(&m) * d(&rr);
            let rhs = d(&out[0]) * d(&out[1]) * d(&out[2]);
            assert!(dist(&lhs, &rhs) < 1e-12, "{mapping:?}");
            assert_eq!((cnt.turnovers, cnt.effective_turnovers), (1, 1));
        }
    }
}

#[test]
fn turnover_shortcuts_are_free() {
    let m = BlockMapping::KITAEV_ODD_XX;
    let x = |i, t| Block::rotation(ix(i), m.kind_at(ix(i)), t);
    let id = |i: usize| Block::identity(ix(i), m.kind_at(ix(i)));
    let mut cnt = OpCounter::default();
    let out = turnover(&x(1, 0.2), &x(2, 0.3), &id(1), &mut cnt).unwrap();
    assert!(out[0].is_identity() && out[1] == x(1, 0.2) && out[2] == x(2, 0.3));
    let out = turnover(&x(1, 0.2), &id(2), &x(1, 0.5), &mut cnt).unwrap();
    assert!(out[0].is_identity() && out[2].is_identity());
    assert!((out[1].angle().unwrap() - 0.7).abs() < 1e-15);
    let out = turnover(&id(1), &x(2, 0.3), &x(1, 0.5), &mut cnt).unwrap();
    assert!(out[0] == x(2, 0.3) && out[1] == x(1, 0.5) && out[2].is_identity());
    assert_eq!(cnt, OpCounter { turnovers: 3, ..Default::default() });
}

#[test]
fn operation_errors() {
    let m = BlockMapping::KITAEV_ODD_XX;
    let x = |i, t| Block::rotation(ix(i), m.kind_at(ix(i)), t);
    let mut cnt = OpCounter::default();
    assert!(matches!(turnover(&x(1, 0.1), &x(3, 0.1), &x(1, 0.1), &mut cnt), Err(Error::NotATurnoverShape(..))));
    let z = Block::rotation(ix(2), BlockKind::Z, 0.1);
    let yy = Block::rotation(ix(1), BlockKind::Yy, 0.1);
    assert!(matches!(turnover(&yy, &z, &yy, &mut cnt), Err(Error::NoSu2Structure(..))));
    let t = Block::identity(ix(2), BlockKind::Tfxy);
    assert_eq!(turnover(&x(1, 0.1), &t, &x(1, 0.1), &mut cnt), Err(Error::MappingMismatch));
    assert!(fuse(&x(1, 0.1), &x(2, 0.1), &mut cnt).is_err());
    let tri = Triangle::identity(m, 3);
    let other = Triangle::identity(BlockMapping::Tfim, 3);
    assert_eq!(merge_triangles(&tri, &other, &mut cnt), Err(Error::MappingMismatch));
    assert!(matches!(
        merge_block_into_triangle(&tri, &x(4, 0.1), &mut cnt),
        Err(Error::IndexOutOfRange { .. })
    ));
    let casc = Cascade::identity(m, 2, 4);
    assert!(matches!(pass_through_cascade(&casc, &x(4, 0.1), &mut cnt), Err(Error::CascadeRange { .. })));
    assert!(matches!(pass_through_cascade(&casc, &x(1, 0.1), &mut cnt), Err(Error::CascadeRange { .. })));
    assert_eq!(compress_time_dependent(&[], &mut cnt), Err(Error::EmptySteps));
}

#[test]
fn pass_through_shifts_index_up() {
    let mut r = rng(3);
    for mapping in MAPPINGS {
        let height = 5;
        let n = mapping.n_qubits(height);
        let blocks: Vec<Block> = (2..=5).map(|i| random_block(&mut r, mapping, i)).collect();
        let casc = Cascade::from_blocks(mapping, blocks).unwrap();
        for m in 2..5 {
            let b = random_block(&mut r, mapping, m);
            let mut cnt = OpCounter::default();
            let (out, c2) = pass_through_cascade(&casc, &b, &mut cnt).unwrap();
            assert_eq!(out.index().get() as usize, m + 1);
            assert_eq!(cnt.turnovers, 1);
            let dc = |c: &Cascade| c.as_slice().iter().fold(M::identity(1 << n, 1 << n), |u, x| u * dense_block(n, mapping, x));
            let lhs = dc(&casc) * dense_block(n, mapping, &b);
            let rhs = dense_block(n, mapping, &out) * dc(&c2);
            assert!(dist(&lhs, &rhs) < 1e-12);
        }
    }
}

#[test]
fn zigzag_merge_counts_and_exactness() {
    for mapping in MAPPINGS {
        for height in 2..=6 {
            let n = mapping.n_qubits(height);
            if n > 7 {
                continue;
            }
            let t = random_triangle(height as u64, mapping, height);
            let z = random_zigzag(&mut rng(99), mapping, height);
            let mut cnt = OpCounter::default();
            let t2 = merge_zigzag_into_triangle(&t, &z, &mut cnt).unwrap();
            let h = height as u64;
            assert_eq!(cnt.turnovers, h * (h - 1) / 2);
            assert_eq!(cnt.fusions, h);
            assert!(dist(&(dense(&t) * dense(&z)), &dense(&t2)) < 1e-11, "{mapping:?} {height}");
            assert_eq!(t2.block_count(), height * (height + 1) / 2);
        }
    }
}

#[test]
fn triangle_merge_counts() {
    for mapping in [BlockMapping::KITAEV_ODD_XX, BlockMapping::Tfxy] {
        for height in 1..=5 {
            let t1 = random_triangle(1, mapping, height);
            let t2 = random_triangle(2, mapping, height);
            let mut cnt = OpCounter::default();
            let t = merge_triangles(&t1, &t2, &mut cnt).unwrap();
            let h = height as u64;
            assert_eq!(cnt.turnovers, triangle_merge_turnovers(h));
            assert_eq!(cnt.fusions, h * (h + 1) / 2);
            assert!(dist(&(dense(&t1) * dense(&t2)), &dense(&t)) < 1e-11);
        }
    }
}

#[test]
fn time_dependent_compression_is_exact() {
    let mut r = rng(5);
    for mapping in MAPPINGS {
        let height = mapping.height(4);
        let steps: Vec<_> = (0..7).map(|_| random_zigzag(&mut r, mapping, height)).collect();
        let mut cnt = OpCounter::default();
        let t = compress_time_dependent(&steps, &mut cnt).unwrap();
        let h = height as u64;
        assert_eq!(cnt.turnovers, 6 * h * (h - 1) / 2);
        let parts: Vec<&dyn BlockSequence> = steps.iter().map(|s| s as &dyn BlockSequence).collect();
        assert!(dist(&dense_time_order(&parts), &dense(&t)) < 1e-11);
    }
}

#[test]
fn time_independent_compression_uses_squaring() {
    let mapping = BlockMapping::KITAEV_ODD_XX;
    let z = random_zigzag(&mut rng(8), mapping, 5);
    let mut cnt = OpCounter::default();
    let t = compress_time_independent(&z, 1024, &mut cnt).unwrap();
    assert_eq!(cnt.turnovers, 200);
    let mut u = dense(&z);
    for _ in 0..10 {
        u = &u * &u;
    }
    assert!(dist(&u, &dense(&t)) < 1e-9);

    let mut cnt = OpCounter::default();
    let t = compress_time_independent(&z, 13, &mut cnt).unwrap();
    let l = dense(&z);
    let want = (0..13).fold(M::identity(64, 64), |acc, _| acc * &l);
    assert!(dist(&want, &dense(&t)) < 1e-10);
    assert_eq!(compress_time_independent(&z, 0, &mut cnt), Err(Error::ZeroRepetitions));
}

#[test]
fn square_layout_shape_depth_and_exactness() {
    for mapping in MAPPINGS {
        for height in 1..=7 {
            if mapping.n_qubits(height) > 8 || (mapping == BlockMapping::Tfim && height % 2 == 0) {
                continue;
            }
            let t = random_triangle(height as u64 + 40, mapping, height);
            let mut cnt = OpCounter::default();
            let s = triangle_to_square(&t, &mut cnt).unwrap();
            assert_eq!(s.shape(), square_shape(height));
            assert_eq!(depth(&s), if height == 1 { 1 } else { height + 1 });
            if height >= 3 {
                assert!(depth(&s) < depth(&t));
            }
            assert_eq!(s.block_count(), t.block_count());
            assert!(dist(&dense(&t), &dense(&s)) < 1e-11, "{mapping:?} {height}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn su2_turnover_reconstructs(a in -3.2f64..3.2, b in -3.2f64..3.2, c in -3.2f64..3.2, outer_x in any::<bool>()) {
        let outer = if outer_x { Axis::X } else { Axis::Z };
        let t = EulerTriple::new(outer, [a, b, c]);
        let out = su2_turnover(&t);
        prop_assert_eq!(out.outer, if outer_x { Axis::Z } else { Axis::X });
        prop_assert!(out.to_su2().distance(&t.to_su2()) < 1e-12);
        prop_assert!(out.to_su2().unitarity_defect() < 1e-12);
        for x in out.angles {
            prop_assert!(x > -std::f64::consts::PI - 1e-15 && x <= std::f64::consts::PI + 1e-15);
        }
    }

    #[test]
    fn fusion_is_associative(x in -3.0f64..3.0, y in -3.0f64..3.0, z in -3.0f64..3.0) {
        let b = |t| Block::rotation(ix(1), BlockKind::Xx, t);
        let mut cnt = OpCounter::default();
        let l = fuse(&fuse(&b(x), &b(y), &mut cnt).unwrap(), &b(z), &mut cnt).unwrap();
        let r = fuse(&b(x), &fuse(&b(y), &b(z), &mut cnt).unwrap(), &mut cnt).unwrap();
        let n = 2;
        let m = BlockMapping::KITAEV_ODD_XX;
        prop_assert!(dist(&dense_block(n, m, &l), &dense_block(n, m, &r)) < 1e-12);
    }

    #[test]
    fn merging_preserves_the_product(seed in 0u64..10_000, height in 2usize..6, kind in 0usize..4) {
        let mapping = MAPPINGS[kind];
        prop_assume!(mapping != BlockMapping::Tfim || height % 2 == 1);
        let t = random_triangle(seed, mapping, height);
        let mut r = rng(seed ^ 0xabc);
        let m = r.gen_range_block(height);
        let b = random_block(&mut r, mapping, m);
        let mut cnt = OpCounter::default();
        let t2 = merge_block_into_triangle(&t, &b, &mut cnt).unwrap();
        prop_assert_eq!(cnt.turnovers as usize, height - m);
        prop_assert_eq!(cnt.fusions, 1);
        let n = mapping.n_qubits(height);
        prop_assert!(dist(&(dense(&t) * dense_block(n, mapping, &b)), &dense(&t2)) < 1e-11);
    }
}

trait RangeBlock {
    fn gen_range_block(&mut self, height: usize) -> usize;
}

impl RangeBlock for rand_chacha::ChaCha8Rng {
    fn gen_range_block(&mut self, height: usize) -> usize {
        use rand::Rng;
        self.gen_range(1..=height)
    }
}

