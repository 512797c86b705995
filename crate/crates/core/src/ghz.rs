//! GHZ-loop logical bases and the symplectic map they induce.
//!
//! For a loop `q_1..q_N` the GHZ generators are `Z̄_i = Z_{q_i} Z_{q_{i+1}}`
//! (`i < N`) and `Z̄_N = Z_{q_N} Z_{q_1} Ω_x` with `Ω_x = ∏ X_{q_j}`. They are
//! completed by `X̄_i = Z_{q_1} X_{q_{i+1}} ⋯ X_{q_N}` (`i < N`) and
//! `X̄_N = Z_{q_1}`. Conjugating by the basis change sends `Z̄_i ↦ Z` and
//! `X̄_i ↦ X` on GHZ qubit `m_i`, which sits on the bond `(q_i, q_{i+1})`
//! and takes the register index of `q_i`.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::group::rank_of;
use crate::lattice::{diagonal_lines, horizontal_loops, Color, Lattice, LatticeKind, Loop};
use crate::pauli::{commutes, mul, PauliOperator};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhzTableau {
    #[serde(rename = "loop")]
    lp: Loop,
    n: usize,
    zbar: Vec<PauliOperator>,
    xbar: Vec<PauliOperator>,
}

impl GhzTableau {
    /// Tableau with caller-supplied operators; see [`validate_tableau`].
    pub fn from_parts(
        lp: Loop,
        n: usize,
        zbar: Vec<PauliOperator>,
        xbar: Vec<PauliOperator>,
    ) -> Self {
        GhzTableau { lp, n, zbar, xbar }
    }

    pub fn loop_(&self) -> &Loop {
        &self.lp
    }

    pub fn len(&self) -> usize {
        self.lp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lp.is_empty()
    }

    /// Register size the operators act on.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zbar(&self) -> &[PauliOperator] {
        &self.zbar
    }

    pub fn xbar(&self) -> &[PauliOperator] {
        &self.xbar
    }

    pub fn mask(&self) -> BitVec {
        BitVec::from_indices(self.n, self.lp.qubits.iter().copied())
    }
}

/// Canonical tableau for a closed loop of at least 3 qubits embedded in an
/// `n`-qubit register.
pub fn build_ghz_tableau(lp: &Loop, n: usize) -> Result<GhzTableau> {
    let q = &lp.qubits;
    let len = q.len();
    if !lp.closed {
        return Err(Error::Loop("GHZ tableau needs a closed loop".into()));
    }
    if len < 3 {
        return Err(Error::Loop(format!(
            "GHZ tableau needs at least 3 qubits, got {len}"
        )));
    }
    if q.iter().any(|&i| i >= n) {
        return Err(Error::Loop("loop qubit outside the register".into()));
    }
    let mut sorted = q.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != len {
        return Err(Error::Loop("loop visits a qubit twice".into()));
    }
    let mut zbar: Vec<PauliOperator> = (0..len - 1)
        .map(|i| PauliOperator::z_on(n, [q[i], q[i + 1]]))
        .collect();
    let omega = PauliOperator::x_on(n, q.iter().copied());
    zbar.push(mul(&PauliOperator::z_on(n, [q[len - 1], q[0]]), &omega));
    let z1 = PauliOperator::z_on(n, [q[0]]);
    let mut xbar: Vec<PauliOperator> = (0..len - 1)
        .map(|i| mul(&z1, &PauliOperator::x_on(n, q[i + 1..].iter().copied())))
        .collect();
    xbar.push(z1);
    Ok(GhzTableau {
        lp: lp.clone(),
        n,
        zbar,
        xbar,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    ZZ,
    XX,
    XZ,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub relation: Relation,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauReport {
    pub size: usize,
    pub checks: usize,
    pub failures: Vec<RelationFailure>,
    pub rank: usize,
    pub hermitian: bool,
    pub supported_on_loop: bool,
}

impl TableauReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.rank == 2 * self.size
            && self.hermitian
            && self.supported_on_loop
    }
}

/// Checks every canonical commutation relation, the rank-`2N` condition,
/// Hermiticity and loop support.
pub fn validate_tableau(t: &GhzTableau) -> TableauReport {
    let len = t.len();
    let mut failures = Vec::new();
    let mut checks = 0;
    let shape_ok = t.zbar.len() == len && t.xbar.len() == len;
    if shape_ok {
        for i in 0..len {
            for j in 0..len {
                checks += 3;
                if !commutes(&t.zbar[i], &t.zbar[j]) {
                    failures.push(RelationFailure {
                        relation: Relation::ZZ,
                        i,
                        j,
                    });
                }
                if !commutes(&t.xbar[i], &t.xbar[j]) {
                    failures.push(RelationFailure {
                        relation: Relation::XX,
                        i,
                        j,
                    });
                }
                if commutes(&t.xbar[i], &t.zbar[j]) != (i != j) {
                    failures.push(RelationFailure {
                        relation: Relation::XZ,
                        i,
                        j,
                    });
                }
            }
        }
    }
    let ops: Vec<PauliOperator> = t.zbar.iter().chain(&t.xbar).cloned().collect();
    let sizes_ok = ops.iter().all(|p| p.n() == t.n);
    let rank = if sizes_ok && shape_ok {
        rank_of(t.n, &ops)
    } else {
        0
    };
    let mask = t.mask();
    TableauReport {
        size: len,
        checks,
        failures,
        rank,
        hermitian: ops.iter().all(|p| p.sign().is_some()),
        supported_on_loop: sizes_ok && ops.iter().all(|p| p.support().and(&mask.not()).is_zero()),
    }
}

/// `P = i^phase · ∏_i X̄_i^{a_i} · ∏_i Z̄_i^{b_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalDecomposition {
    pub a: BitVec,
    pub b: BitVec,
    pub phase: u8,
}

impl LogicalDecomposition {
    /// `±1` when the phase is real.
    pub fn sign(&self) -> Option<i8> {
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

/// Product `∏ X̄^a ∏ Z̄^b`, left to right in index order.
pub fn logical_product(t: &GhzTableau, a: &BitVec, b: &BitVec) -> PauliOperator {
    let mut acc = PauliOperator::identity(t.n);
    for i in a.ones() {
        acc = mul(&acc, &t.xbar[i]);
    }
    for i in b.ones() {
        acc = mul(&acc, &t.zbar[i]);
    }
    acc
}

pub fn decompose_in_logical_basis(
    p: &PauliOperator,
    t: &GhzTableau,
) -> Result<LogicalDecomposition> {
    if p.n() != t.n {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: t.n,
        });
    }
    if !p.support().and(&t.mask().not()).is_zero() {
        return Err(Error::Loop("operator has support off the loop".into()));
    }
    let len = t.len();
    let a = BitVec::from_bools(
        &(0..len)
            .map(|i| !commutes(p, &t.zbar[i]))
            .collect::<Vec<_>>(),
    );
    let b = BitVec::from_bools(
        &(0..len)
            .map(|i| !commutes(p, &t.xbar[i]))
            .collect::<Vec<_>>(),
    );
    let q = logical_product(t, &a, &b);
    if q.x_bits() != p.x_bits() || q.z_bits() != p.z_bits() {
        return Err(Error::Internal(format!(
            "logical reconstruction failed for {p} on a loop of {len}"
        )));
    }
    Ok(LogicalDecomposition {
        a,
        b,
        phase: (p.phase() + 4 - q.phase()) % 4,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputQubit {
    Ghz { tableau: usize, position: usize },
    Passthrough { input: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisentanglerMap {
    n: usize,
    tableaux: Vec<GhzTableau>,
    untouched: Vec<usize>,
    layout: Vec<OutputQubit>,
    reports: Vec<TableauReport>,
}

impl DisentanglerMap {
    /// Validates every tableau and the disjointness of their loops.
    pub fn new(n: usize, tableaux: Vec<GhzTableau>) -> Result<Self> {
        let mut layout: Vec<Option<OutputQubit>> = vec![None; n];
        let mut reports = Vec::with_capacity(tableaux.len());
        for (ti, t) in tableaux.iter().enumerate() {
            if t.n != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: t.n,
                });
            }
            let rep = validate_tableau(t);
            if !rep.passed() {
                return Err(Error::InvalidTableau(format!(
                    "tableau {ti}: {} relation failures, rank {} of {}",
                    rep.failures.len(),
                    rep.rank,
                    2 * rep.size
                )));
            }
            reports.push(rep);
            for (pos, &q) in t.lp.qubits.iter().enumerate() {
                if layout[q].is_some() {
                    return Err(Error::Loop(format!("qubit {q} lies on two loops")));
                }
                layout[q] = Some(OutputQubit::Ghz {
                    tableau: ti,
                    position: pos,
                });
            }
        }
        let mut untouched = Vec::new();
        let layout = layout
            .into_iter()
            .enumerate()
            .map(|(q, e)| {
                e.unwrap_or_else(|| {
                    untouched.push(q);
                    OutputQubit::Passthrough { input: q }
                })
            })
            .collect();
        Ok(DisentanglerMap {
            n,
            tableaux,
            untouched,
            layout,
            reports,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tableaux(&self) -> &[GhzTableau] {
        &self.tableaux
    }

    pub fn untouched(&self) -> &[usize] {
        &self.untouched
    }

    /// What each output register index holds.
    pub fn layout(&self) -> &[OutputQubit] {
        &self.layout
    }

    pub fn tableau_reports(&self) -> &[TableauReport] {
        &self.reports
    }

    /// Output index of GHZ qubit `m_position` of a tableau.
    pub fn ghz_index(&self, tableau: usize, position: usize) -> usize {
        self.tableaux[tableau].lp.qubits[position]
    }

    pub fn is_ghz(&self, out: usize) -> bool {
        matches!(self.layout[out], OutputQubit::Ghz { .. })
    }

    /// Bond color of the GHZ qubit at an output index, if the lattice has colors.
    pub fn ghz_color(&self, out: usize) -> Option<Color> {
        match self.layout[out] {
            OutputQubit::Ghz { tableau, position } => {
                self.tableaux[tableau].lp.edge_colors[position]
            }
            OutputQubit::Passthrough { .. } => None,
        }
    }

    pub fn map_pauli(&self, p: &PauliOperator) -> Result<PauliOperator> {
        map_pauli(self, p)
    }
}

/// Image of `p` under the basis change, with exact phase.
pub fn map_pauli(map: &DisentanglerMap, p: &PauliOperator) -> Result<PauliOperator> {
    if p.n() != map.n {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: map.n,
        });
    }
    let n = map.n;
    let mut out = PauliOperator::identity(n);
    let mut phase = p.phase() as usize;
    for t in &map.tableaux {
        let f = p.restricted(&t.mask());
        if f.is_identity() {
            continue;
        }
        let d = decompose_in_logical_basis(&f, t)?;
        // f has phase 0, so f = i^{d.phase} · (X̄^a Z̄^b) and maps to i^{d.phase} X^a Z^b.
        phase += d.phase as usize;
        for i in d.a.ones() {
            let o = t.lp.qubits[i];
            out.set_qubit(o, true, out.qubit(o).1);
        }
        for i in d.b.ones() {
            let o = t.lp.qubits[i];
            out.set_qubit(o, out.qubit(o).0, true);
        }
    }
    for &q in &map.untouched {
        let (x, z) = p.qubit(q);
        out.set_qubit(q, x, z);
    }
    Ok(out.with_phase((phase % 4) as u8))
}

/// Tableaux on all horizontal loops of a hex torus.
pub fn build_color_disentangler(lat: &Lattice) -> Result<DisentanglerMap> {
    if lat.kind() != LatticeKind::HexTorus {
        return Err(Error::KindMismatch {
            expected: LatticeKind::HexTorus.name(),
            got: lat.kind().name(),
        });
    }
    let n = lat.n_qubits();
    let tabs = horizontal_loops(lat)?
        .iter()
        .map(|lp| build_ghz_tableau(lp, n))
        .collect::<Result<Vec<_>>>()?;
    DisentanglerMap::new(n, tabs)
}

/// Tableaux on the transformed diagonal lines of a square torus.
pub fn build_toric_disentangler(lat: &Lattice) -> Result<DisentanglerMap> {
    let n = lat.n_qubits();
    let tabs = diagonal_lines(lat)?
        .iter()
        .filter(|lp| lp.is_transformed())
        .map(|lp| build_ghz_tableau(lp, n))
        .collect::<Result<Vec<_>>>()?;
    DisentanglerMap::new(n, tabs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Loop {
        Loop::closed_ring((0..n).collect())
    }

    #[test]
    fn n3_matches_closed_form() {
        let t = build_ghz_tableau(&ring(3), 3).unwrap();
        let z: Vec<String> = t.zbar().iter().map(|p| p.to_string()).collect();
        let x: Vec<String> = t.xbar().iter().map(|p| p.to_string()).collect();
        // Z_3 Z_1 X_1 X_2 X_3 = (Z X)_1 X_2 (Z X)_3 = -Y X -Y up to ordering phases.
        assert_eq!(z[..2], ["+ZZI", "+IZZ"]);
        assert_eq!(
            t.zbar()[2],
            mul(&"ZIZ".parse().unwrap(), &"XXX".parse().unwrap())
        );
        assert_eq!(x, ["+ZXX", "+ZIX", "+ZII"]);
        assert!(validate_tableau(&t).passed());
    }

    #[test]
    fn short_or_open_loops_rejected() {
        assert!(build_ghz_tableau(&ring(2), 2).is_err());
        let mut open = ring(4);
        open.closed = false;
        assert!(build_ghz_tableau(&open, 4).is_err());
    }

    #[test]
    fn basis_elements_decompose_trivially() {
        let t = build_ghz_tableau(&ring(5), 5).unwrap();
        for j in 0..5 {
            let d = decompose_in_logical_basis(&t.zbar()[j], &t).unwrap();
            assert!(d.a.is_zero());
            assert_eq!(d.b, BitVec::from_indices(5, [j]));
            assert_eq!(d.sign(), Some(1));
        }
    }

    #[test]
    fn identity_maps_to_identity() {
        let t = build_ghz_tableau(&ring(4), 6).unwrap();
        let m = DisentanglerMap::new(6, vec![t]).unwrap();
        assert_eq!(m.untouched(), &[4, 5]);
        let id = PauliOperator::identity(6);
        assert_eq!(m.map_pauli(&id).unwrap(), id);
    }

    #[test]
    fn overlapping_loops_rejected() {
        let a = build_ghz_tableau(&Loop::closed_ring(vec![0, 1, 2]), 5).unwrap();
        let b = build_ghz_tableau(&Loop::closed_ring(vec![2, 3, 4]), 5).unwrap();
        assert!(DisentanglerMap::new(5, vec![a, b]).is_err());
    }
}
