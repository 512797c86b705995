//! Stabilizer codes on lattices: toric and Kitaev-ladder codes (vertex X
//! stars, face Z loops) and the color code (X and Z on every hexagon).

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::group::{rank_of, StabilizerGroup, StabilizerState};
use crate::lattice::{horizontal_loops, Color, Lattice, LatticeKind};
use crate::pauli::PauliOperator;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    Toric,
    Color,
    KitaevLadder,
    /// Generators supplied directly, with no lattice.
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckType {
    X,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
    Vertex(usize),
    Face(usize),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub cell: Cell,
    pub check: Option<CheckType>,
    pub color: Option<Color>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeInstance {
    kind: CodeKind,
    lattice: Option<Lattice>,
    group: StabilizerGroup,
    provenance: Vec<Provenance>,
}

impl CodeInstance {
    /// Code from explicit generators; they must commute and carry real signs.
    pub fn from_generators(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        let provenance = generators
            .iter()
            .map(|g| Provenance {
                cell: Cell::None,
                check: if g.is_x_type() {
                    Some(CheckType::X)
                } else if g.is_z_type() {
                    Some(CheckType::Z)
                } else {
                    None
                },
                color: None,
            })
            .collect();
        Ok(CodeInstance {
            kind: CodeKind::Custom,
            lattice: None,
            group: StabilizerGroup::new(n, generators)?,
            provenance,
        })
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.lattice.as_ref()
    }

    pub fn group(&self) -> &StabilizerGroup {
        &self.group
    }

    pub fn generators(&self) -> &[PauliOperator] {
        self.group.generators()
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }
}

/// Toric code on a square torus, or the Kitaev-ladder code on a triangular
/// ladder: `A_v = ∏ X` over each vertex star and `B_p = ∏ Z` over each face.
pub fn build_toric_code(lat: &Lattice) -> Result<CodeInstance> {
    let kind = match lat.kind() {
        LatticeKind::SquareTorus => CodeKind::Toric,
        LatticeKind::TriangularLadder => CodeKind::KitaevLadder,
        other => {
            return Err(Error::KindMismatch {
                expected: "square-torus or triangular-ladder",
                got: other.name(),
            })
        }
    };
    let n = lat.n_qubits();
    let mut gens = Vec::new();
    let mut prov = Vec::new();
    for (v, star) in lat.vertex_stars().iter().enumerate() {
        // Incidence parity: a self-loop touches its vertex twice and drops out.
        let mut x = BitVec::zeros(n);
        for &q in star {
            x.flip(q);
        }
        gens.push(PauliOperator::new(x, BitVec::zeros(n), 0)?);
        prov.push(Provenance {
            cell: Cell::Vertex(v),
            check: Some(CheckType::X),
            color: None,
        });
    }
    for (f, face) in lat.faces().iter().enumerate() {
        gens.push(PauliOperator::z_on(n, face.boundary.iter().copied()));
        prov.push(Provenance {
            cell: Cell::Face(f),
            check: Some(CheckType::Z),
            color: face.color,
        });
    }
    Ok(CodeInstance {
        kind,
        lattice: Some(lat.clone()),
        group: StabilizerGroup::new(n, gens)?,
        provenance: prov,
    })
}

/// Color code on a hex torus: every `B^x_p` in face order, then every `B^z_p`.
pub fn build_color_code(lat: &Lattice) -> Result<CodeInstance> {
    if lat.kind() != LatticeKind::HexTorus {
        return Err(Error::KindMismatch {
            expected: LatticeKind::HexTorus.name(),
            got: lat.kind().name(),
        });
    }
    let n = lat.n_qubits();
    let mut gens = Vec::new();
    let mut prov = Vec::new();
    for check in [CheckType::X, CheckType::Z] {
        for (f, face) in lat.faces().iter().enumerate() {
            let q = face.boundary.iter().copied();
            gens.push(match check {
                CheckType::X => PauliOperator::x_on(n, q),
                CheckType::Z => PauliOperator::z_on(n, q),
            });
            prov.push(Provenance {
                cell: Cell::Face(f),
                check: Some(check),
                color: face.color,
            });
        }
    }
    Ok(CodeInstance {
        kind: CodeKind::Color,
        lattice: Some(lat.clone()),
        group: StabilizerGroup::new(n, gens)?,
        provenance: prov,
    })
}

/// Number of encoded qubits `k = n − rank`.
pub fn degeneracy(code: &CodeInstance) -> usize {
    code.n() - code.group().rank()
}

/// Z-type operators commuting with every X-type part of `gens`, one per
/// free column of the reduced X-part matrix.
fn z_commutant_basis(n: usize, gens: &[PauliOperator]) -> Vec<PauliOperator> {
    let xs = GF2Matrix::from_rows(n, gens.iter().map(|g| g.x_bits().clone()).collect());
    xs.nullspace()
        .into_iter()
        .map(|z| PauliOperator::new(BitVec::zeros(n), z, 0).expect("sizes agree"))
        .collect()
}

/// Canonical geometric Z loops tried before the algebraic fill.
fn loop_candidates(code: &CodeInstance) -> Vec<PauliOperator> {
    let n = code.n();
    let Some(lat) = code.lattice() else {
        return Vec::new();
    };
    match lat.kind() {
        LatticeKind::SquareTorus => {
            let l = lat.size();
            vec![
                // Row 0 of horizontal edges and column 0 of vertical edges.
                PauliOperator::z_on(n, (0..l).map(|c| 2 * c)),
                PauliOperator::z_on(n, (0..l).map(|r| 2 * r * l + 1)),
            ]
        }
        LatticeKind::HexTorus => horizontal_loops(lat)
            .map(|loops| {
                loops
                    .iter()
                    .map(|lp| PauliOperator::z_on(n, lp.qubits.iter().copied()))
                    .collect()
            })
            .unwrap_or_default(),
        LatticeKind::TriangularLadder => Vec::new(),
    }
}

/// Extends `gens` greedily by `candidates` until the rank reaches `n`.
pub fn complete_with(
    n: usize,
    gens: &[PauliOperator],
    candidates: &[PauliOperator],
) -> Result<StabilizerState> {
    let mut all = gens.to_vec();
    let mut rank = rank_of(n, &all);
    for c in candidates {
        if rank == n {
            break;
        }
        all.push(c.clone());
        let r = rank_of(n, &all);
        if r > rank {
            rank = r;
        } else {
            all.pop();
        }
    }
    if rank != n {
        return Err(Error::Completion(format!("reached rank {rank} of {n}")));
    }
    StabilizerState::new(StabilizerGroup::new(n, all)?)
}

/// Full-rank extension of a CSS code whose X generators define the state
/// `∏(1 + G_x)|0…0⟩`. Added operators are +1-signed Z-type: canonical lattice
/// loops first, then the reduced commutant basis.
pub fn ground_state_completion(code: &CodeInstance) -> Result<StabilizerState> {
    let n = code.n();
    if code
        .generators()
        .iter()
        .any(|g| !g.is_x_type() && !g.is_z_type())
    {
        return Err(Error::Completion("code is not CSS".into()));
    }
    let mut candidates = loop_candidates(code);
    candidates.extend(z_commutant_basis(n, code.generators()));
    complete_with(n, code.generators(), &candidates)
}

/// X-type logical operators: X-type commutant of the Z generators, reduced
/// modulo the X-type generators.
pub fn x_logicals(code: &CodeInstance) -> Vec<PauliOperator> {
    let n = code.n();
    let zs = GF2Matrix::from_rows(
        n,
        code.generators()
            .iter()
            .map(|g| g.z_bits().clone())
            .collect(),
    );
    let mut base: Vec<PauliOperator> = code
        .generators()
        .iter()
        .filter(|g| g.is_x_type())
        .cloned()
        .collect();
    let mut rank = rank_of(n, &base);
    let mut out = Vec::new();
    for x in zs.nullspace() {
        let p = PauliOperator::new(x, BitVec::zeros(n), 0).expect("sizes agree");
        base.push(p.clone());
        let r = rank_of(n, &base);
        if r > rank {
            rank = r;
            out.push(p);
        } else {
            base.pop();
        }
    }
    out
}
