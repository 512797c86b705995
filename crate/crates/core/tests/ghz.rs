//! GHZ tableaux, logical decomposition and the induced Pauli map.

use ladderkit::analysis::disentangler_for;
use ladderkit::codes::{build_color_code, build_toric_code, CodeInstance};
use ladderkit::ghz::{
    build_ghz_tableau, decompose_in_logical_basis, logical_product, validate_tableau,
    DisentanglerMap, GhzTableau,
};
use ladderkit::lattice::{build_hex_torus, build_square_torus, Loop};
use ladderkit::pauli::{commutes, mul};
use ladderkit::{group, PauliOperator};
use proptest::prelude::*;

fn ring(n: usize) -> Loop {
    Loop::closed_ring((0..n).collect())
}

#[test]
fn canonical_tableaux_validate() {
    for n in 3..=8 {
        let t = build_ghz_tableau(&ring(n), n).unwrap();
        let r = validate_tableau(&t);
        assert!(r.passed(), "N={n}: {r:?}");
        assert_eq!(r.checks, 3 * n * n);
        assert_eq!(r.rank, 2 * n);
        assert!(!commutes(&t.xbar()[n - 1], &t.zbar()[n - 1]));
        for i in 0..n - 1 {
            assert!(commutes(&t.xbar()[i], &t.zbar()[n - 1]));
        }
    }
}

#[test]
fn short_or_open_loops_rejected() {
    assert!(build_ghz_tableau(&ring(2), 2).is_err());
    let mut open = ring(4);
    open.closed = false;
    assert!(build_ghz_tableau(&open, 4).is_err());
}

#[test]
fn broken_tableaux_fail_validation() {
    let t = build_ghz_tableau(&ring(4), 4).unwrap();
    let mut x = t.xbar().to_vec();
    x[3] = PauliOperator::z_on(4, [1]);
    let bad = GhzTableau::from_parts(ring(4), 4, t.zbar().to_vec(), x);
    assert!(!validate_tableau(&bad).passed());

    let mut z = t.zbar().to_vec();
    z[3] = PauliOperator::z_on(4, [3, 0]);
    let bad = GhzTableau::from_parts(ring(4), 4, z, t.xbar().to_vec());
    let r = validate_tableau(&bad);
    assert!(!r.passed());
    assert!(r.rank < 8);
}

#[test]
fn basis_elements_decompose_trivially() {
    let t = build_ghz_tableau(&ring(5), 5).unwrap();
    for j in 0..5 {
        let d = decompose_in_logical_basis(&t.zbar()[j], &t).unwrap();
        assert!(d.a.is_zero());
        assert_eq!(d.b.ones().collect::<Vec<_>>(), vec![j]);
        assert_eq!(d.sign(), Some(1));
        let d = decompose_in_logical_basis(&t.xbar()[j], &t).unwrap();
        assert_eq!(d.a.ones().collect::<Vec<_>>(), vec![j]);
        assert!(d.b.is_zero());
    }
}

#[test]
fn z_on_first_qubit_and_omega() {
    let t = build_ghz_tableau(&ring(4), 4).unwrap();
    let z1 = PauliOperator::z_on(4, [0]);
    let d = decompose_in_logical_basis(&z1, &t).unwrap();
    assert_eq!(d.a.ones().collect::<Vec<_>>(), vec![3]);
    assert!(d.b.is_zero());
    let omega = PauliOperator::x_on(4, 0..4);
    let d = decompose_in_logical_basis(&omega, &t).unwrap();
    let back = logical_product(&t, &d.a, &d.b);
    let ph = (back.phase() + d.phase) % 4;
    assert_eq!(back.with_phase(ph), omega);
}

fn check_reconstruction(code: &CodeInstance) {
    let map = disentangler_for(code).unwrap();
    for g in code.generators() {
        for t in map.tableaux() {
            let f = g.restricted(&t.mask());
            let d = decompose_in_logical_basis(&f, t).unwrap();
            let back = logical_product(t, &d.a, &d.b);
            let ph = (back.phase() + d.phase) % 4;
            assert_eq!(back.with_phase(ph), f);
        }
    }
}

#[test]
fn reconstruction_holds_on_every_generator() {
    check_reconstruction(&build_toric_code(&build_square_torus(4).unwrap()).unwrap());
    check_reconstruction(&build_color_code(&build_hex_torus(12).unwrap()).unwrap());
}

#[test]
fn disentangler_layouts() {
    let hex = build_hex_torus(12).unwrap();
    let code = build_color_code(&hex).unwrap();
    let map = disentangler_for(&code).unwrap();
    assert_eq!(map.tableaux().len(), 12);
    assert!(map.tableaux().iter().all(|t| t.len() == 12));
    assert!(map.untouched().is_empty());
    assert_eq!(map.layout().len(), 144);

    let code = build_toric_code(&build_square_torus(4).unwrap()).unwrap();
    let map = disentangler_for(&code).unwrap();
    let ghz: usize = map.tableaux().iter().map(|t| t.len()).sum();
    assert_eq!(ghz, 16);
    assert_eq!(map.untouched().len(), 16);
    assert_eq!(map.layout().len(), 32);
}

#[test]
fn overlapping_loops_rejected() {
    let a = build_ghz_tableau(&Loop::closed_ring(vec![0, 1, 2]), 5).unwrap();
    let b = build_ghz_tableau(&Loop::closed_ring(vec![2, 3, 4]), 5).unwrap();
    assert!(DisentanglerMap::new(5, vec![a, b]).is_err());
}

#[test]
fn identity_maps_to_identity() {
    let code = build_toric_code(&build_square_torus(4).unwrap()).unwrap();
    let map = disentangler_for(&code).unwrap();
    let id = PauliOperator::identity(32);
    assert_eq!(map.map_pauli(&id).unwrap(), id);
}

fn two_loop_map() -> DisentanglerMap {
    let a = build_ghz_tableau(&Loop::closed_ring(vec![0, 2, 4, 6]), 10).unwrap();
    let b = build_ghz_tableau(&Loop::closed_ring(vec![1, 5, 3]), 10).unwrap();
    DisentanglerMap::new(10, vec![a, b]).unwrap()
}

fn herm(n: usize) -> impl Strategy<Value = PauliOperator> {
    (proptest::collection::vec(0u8..4, n), any::<bool>()).prop_map(|(w, neg)| {
        let s: String = w
            .iter()
            .map(|&c| ['I', 'X', 'Y', 'Z'][c as usize])
            .collect();
        format!("{}{s}", if neg { '-' } else { '+' })
            .parse()
            .unwrap()
    })
}

proptest! {
    #[test]
    fn map_is_a_homomorphism(a in herm(10), b in herm(10)) {
        let map = two_loop_map();
        let (ma, mb) = (map.map_pauli(&a).unwrap(), map.map_pauli(&b).unwrap());
        prop_assert_eq!(commutes(&a, &b), commutes(&ma, &mb));
        prop_assert_eq!(map.map_pauli(&mul(&a, &b)).unwrap(), mul(&ma, &mb));
        prop_assert_eq!(ma.is_hermitian(), a.is_hermitian());
    }

    #[test]
    fn map_preserves_rank(ops in proptest::collection::vec(herm(10), 1..12)) {
        let map = two_loop_map();
        let imgs: Vec<PauliOperator> = ops.iter().map(|p| map.map_pauli(p).unwrap()).collect();
        prop_assert_eq!(group::rank_of(10, &imgs), group::rank_of(10, &ops));
    }
}
