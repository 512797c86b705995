//! Code construction, degeneracy and ground-state completion.

use ladderkit::codes::{
    build_color_code, build_toric_code, degeneracy, ground_state_completion, x_logicals, CheckType,
    CodeInstance,
};
use ladderkit::lattice::{build_hex_torus, build_square_torus, build_triangular_ladder};
use ladderkit::oracle::{dense_ground_state, eigen_violations};
use ladderkit::pauli::{commutes, mul};
use ladderkit::PauliOperator;

fn product_of(ops: impl Iterator<Item = PauliOperator>, n: usize) -> PauliOperator {
    ops.fold(PauliOperator::identity(n), |a, b| mul(&a, &b))
}

fn all_commute(code: &CodeInstance) -> bool {
    let g = code.generators();
    g.iter().all(|a| g.iter().all(|b| commutes(a, b)))
}

#[test]
fn toric_generators() {
    for l in [2, 4] {
        let code = build_toric_code(&build_square_torus(l).unwrap()).unwrap();
        assert_eq!(code.n(), 2 * l * l);
        assert_eq!(code.generators().len(), 2 * l * l);
        assert!(all_commute(&code));
        assert!(code
            .generators()
            .iter()
            .all(|g| g.sign() == Some(1) && g.weight() == 4));
        assert_eq!(degeneracy(&code), 2);
        let n = code.n();
        let xs = code.generators().iter().filter(|g| g.is_x_type()).cloned();
        let zs = code.generators().iter().filter(|g| g.is_z_type()).cloned();
        assert!(product_of(xs, n).is_identity());
        assert!(product_of(zs, n).is_identity());
    }
}

#[test]
fn color_generators_and_degeneracy() {
    let code = build_color_code(&build_hex_torus(12).unwrap()).unwrap();
    assert_eq!(code.generators().len(), 144);
    assert!(all_commute(&code));
    assert!(code
        .generators()
        .iter()
        .all(|g| g.weight() == 6 && g.sign() == Some(1)));
    assert_eq!(degeneracy(&code), 4);
    assert_eq!(x_logicals(&code).len(), 4);
    let lat = code.lattice().unwrap();
    let fq = lat.faces_of_qubits();
    // Adjacent faces share exactly two qubits.
    for (f, face) in lat.faces().iter().enumerate() {
        for &q in &face.boundary {
            for &g in &fq[q] {
                if g != f {
                    let shared = face
                        .boundary
                        .iter()
                        .filter(|b| lat.faces()[g].boundary.contains(b))
                        .count();
                    assert_eq!(shared, 2);
                }
            }
        }
    }
}

#[test]
fn ladder_code_degeneracy() {
    for r in [4, 6, 8] {
        let code = build_toric_code(&build_triangular_ladder(r, true).unwrap()).unwrap();
        assert!(all_commute(&code));
        assert_eq!(degeneracy(&code), 2, "R={r}");
    }
}

#[test]
fn degeneracy_is_invariant_under_products() {
    let code = build_toric_code(&build_square_torus(4).unwrap()).unwrap();
    let mut g: Vec<PauliOperator> = code.generators().to_vec();
    g.reverse();
    for i in 1..g.len() {
        g[i] = mul(&g[i], &g[i - 1]);
    }
    let other = CodeInstance::from_generators(code.n(), g).unwrap();
    assert_eq!(degeneracy(&other), degeneracy(&code));
}

#[test]
fn provenance_matches_support() {
    let code = build_toric_code(&build_square_torus(4).unwrap()).unwrap();
    let lat = code.lattice().unwrap();
    for (g, p) in code.generators().iter().zip(code.provenance()) {
        let mut support: Vec<usize> = g.support().ones().collect();
        let mut cell: Vec<usize> = match (p.check, p.cell) {
            (Some(CheckType::X), ladderkit::codes::Cell::Vertex(v)) => {
                lat.vertex_stars()[v].clone()
            }
            (Some(CheckType::Z), ladderkit::codes::Cell::Face(f)) => {
                lat.faces()[f].boundary.clone()
            }
            other => panic!("unexpected provenance {other:?}"),
        };
        support.sort_unstable();
        cell.sort_unstable();
        assert_eq!(support, cell);
    }
}

#[test]
fn completion_matches_dense_state() {
    let codes = [
        build_toric_code(&build_square_torus(2).unwrap()).unwrap(),
        build_toric_code(&build_triangular_ladder(4, true).unwrap()).unwrap(),
        build_toric_code(&build_triangular_ladder(4, false).unwrap()).unwrap(),
        CodeInstance::from_generators(2, vec!["ZZ".parse().unwrap()]).unwrap(),
    ];
    for code in &codes {
        let st = ground_state_completion(code).unwrap();
        assert_eq!(st.group().rank(), code.n());
        let added = &st.group().generators()[code.generators().len()..];
        assert_eq!(added.len(), degeneracy(code));
        assert!(added.iter().all(|p| p.is_z_type() && p.sign() == Some(1)));
        let dense = dense_ground_state(code).unwrap();
        assert!(eigen_violations(&dense, st.group().generators()).is_empty());
    }
}

#[test]
fn color_completion_is_full_rank() {
    let code = build_color_code(&build_hex_torus(12).unwrap()).unwrap();
    let st = ground_state_completion(&code).unwrap();
    assert_eq!(st.group().rank(), 144);
    let added = &st.group().generators()[code.generators().len()..];
    assert_eq!(added.len(), 4);
    assert!(added.iter().all(|p| p.is_z_type()));
}

#[test]
fn kind_mismatch_rejected() {
    assert!(build_toric_code(&build_hex_torus(12).unwrap()).is_err());
    assert!(build_color_code(&build_square_torus(2).unwrap()).is_err());
}
