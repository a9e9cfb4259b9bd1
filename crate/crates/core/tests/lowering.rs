mod common;

use blockcomp_core::circuit::{Block, BlockKind, BlockMapping, BlockSequence, Zigzag};
use blockcomp_core::export::{lower_to_gates, Gate, LoweringStyle};
use blockcomp_core::models::{Family, Schedule};
use blockcomp_core::pipeline::{compile, Compiled, CompressionPath, Target};
use common::*;

fn compiled(family: Family, n: usize, steps: usize, target: Target, seed: u64) -> Compiled {
    let m = random_model(family, n, seed);
    let sched = Schedule::Constant(m.couplings().clone());
    compile(&m, &sched, 0.1, steps, target, CompressionPath::Auto).unwrap()
}

#[test]
fn lowering_preserves_unitary_exactly() {
    for family in Family::ALL {
        for n in 3..=6 {
            let c = compiled(family, n, 3, Target::Native, n as u64);
            let want = dense_time_order(&c.square_parts());
            for style in [LoweringStyle::Rotations, LoweringStyle::Cnot] {
                let g = lower_to_gates(&c.square_parts(), style).unwrap();
                let d = dist(&dense_gates(&g), &want);
                assert!(d < 1e-10, "{family} n={n} {style:?}: {d}");
            }
        }
    }
}

#[test]
fn table_gate_counts() {
    for n in 3..=10 {
        let n2 = n * (n - 1);
        for (family, rot, cx) in [
            (Family::Kitaev, n2 / 2, n2),
            (Family::Xy, n2, n2),
            (Family::Tfim, n2, 2 * n2),
            (Family::Tfxy, n2, n2),
            (Family::GenTfxy, n2, n2),
        ] {
            let c = compiled(family, n, 2, Target::Native, 1);
            let r = lower_to_gates(&c.square_parts(), LoweringStyle::Rotations).unwrap().stats();
            let x = lower_to_gates(&c.square_parts(), LoweringStyle::Cnot).unwrap().stats();
            assert_eq!((r.two_qubit_rotations, x.cnots), (rot, cx), "{family} n={n}");
            assert_eq!(x.two_qubit_rotations, 0);
        }
        let c = compiled(Family::Tfim, n, 2, Target::Tfxy, 1);
        let x = lower_to_gates(&c.square_parts(), LoweringStyle::Cnot).unwrap().stats();
        assert_eq!(x.cnots, n2);
    }
}

#[test]
fn single_field_block_is_one_rz() {
    let b = Block::rotation(ix(1), BlockKind::Z, 0.25);
    let z = Zigzag::from_blocks(BlockMapping::Tfim, 1, &[b]).unwrap();
    let g = lower_to_gates(&[&z as &dyn BlockSequence], LoweringStyle::Cnot).unwrap();
    assert_eq!(g.gates(), &[Gate::Rz(0.5, 0)]);
}

#[test]
fn cnot_kernels_match_oracle() {
    use blockcomp_core::export::GateSeq;
    let rot = GateSeq::from_gates(2, vec![Gate::Rxx(0.7, 0, 1), Gate::Ryy(-1.3, 0, 1)]).unwrap();
    let z = |g: &Gate| {
        let s = GateSeq::from_gates(2, vec![*g]).unwrap();
        dense_gates(&s)
    };
    let want = z(&Gate::Ryy(-1.3, 0, 1)) * z(&Gate::Rxx(0.7, 0, 1));
    assert!(dist(&dense_gates(&rot), &want) < 1e-14);
}
