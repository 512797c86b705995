//! Stabilizer groups, membership and canonical forms.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::pauli::{commutes, mul, PauliOperator};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "selection", rename_all = "snake_case")]
pub enum Membership {
    /// The operator is the product of the selected generators, sign included.
    Member(Vec<usize>),
    /// The selected generators reproduce the operator up to a factor `-1`.
    SignMismatch(Vec<usize>),
    Absent,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliOperator>,
    #[serde(skip)]
    canonical: OnceLock<std::result::Result<GF2Matrix, Error>>,
}

impl StabilizerGroup {
    /// Validates sizes, Hermiticity and pairwise commutation.
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        for g in &generators {
            if g.n() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: g.n(),
                });
            }
            if g.sign().is_none() {
                return Err(Error::NotHermitian);
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !commutes(&generators[i], &generators[j]) {
                    return Err(Error::Anticommuting(i, j));
                }
            }
        }
        Ok(StabilizerGroup {
            n,
            generators,
            canonical: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn symplectic_matrix(&self) -> GF2Matrix {
        symplectic_matrix(self.n, &self.generators)
    }

    pub fn rank(&self) -> usize {
        symplectic_rank(self)
    }

    /// Product of the selected generators, multiplied in index order.
    pub fn product(&self, selection: &[usize]) -> PauliOperator {
        selection
            .iter()
            .fold(PauliOperator::identity(self.n), |acc, &i| {
                mul(&acc, &self.generators[i])
            })
    }

    pub fn contains(&self, p: &PauliOperator) -> Membership {
        contains(self, p)
    }

    pub fn canonical_form(&self) -> Result<&GF2Matrix> {
        canonical_form(self)
    }

    /// Equality of the generated signed groups.
    pub fn same_group(&self, other: &StabilizerGroup) -> Result<bool> {
        Ok(self.n == other.n && self.canonical_form()? == other.canonical_form()?)
    }

    /// True iff every generator of `other` lies in `self`, signs included.
    pub fn contains_group(&self, other: &StabilizerGroup) -> bool {
        other
            .generators
            .iter()
            .all(|g| self.contains(g).is_member())
    }
}

/// Symplectic matrix with one `(x | z)` row per operator.
pub fn symplectic_matrix(n: usize, ops: &[PauliOperator]) -> GF2Matrix {
    GF2Matrix::from_rows(2 * n, ops.iter().map(|p| p.symplectic()).collect())
}

pub fn symplectic_rank(group: &StabilizerGroup) -> usize {
    group.symplectic_matrix().rank()
}

/// Rank of an arbitrary operator list, commuting or not.
pub fn rank_of(n: usize, ops: &[PauliOperator]) -> usize {
    symplectic_matrix(n, ops).rank()
}

pub fn contains(group: &StabilizerGroup, p: &PauliOperator) -> Membership {
    if p.n() != group.n || p.sign().is_none() {
        return Membership::Absent;
    }
    let Some(sel) = group.symplectic_matrix().solve_left(&p.symplectic()) else {
        return Membership::Absent;
    };
    let idx: Vec<usize> = sel.ones().collect();
    let prod = group.product(&idx);
    debug_assert_eq!(prod.symplectic(), p.symplectic());
    if prod.phase() == p.phase() {
        Membership::Member(idx)
    } else {
        Membership::SignMismatch(idx)
    }
}

/// Reduced row-echelon form over `(x_1..x_n, z_1..z_n, sign)`.
///
/// Row operations multiply operators, so the sign column tracks the true
/// group element for each pivot row.
pub fn canonical_form(group: &StabilizerGroup) -> Result<&GF2Matrix> {
    group
        .canonical
        .get_or_init(|| compute_canonical(group.n, &group.generators))
        .as_ref()
        .map_err(Clone::clone)
}

fn compute_canonical(n: usize, gens: &[PauliOperator]) -> std::result::Result<GF2Matrix, Error> {
    let mut rows: Vec<PauliOperator> = gens.to_vec();
    let mut r = 0;
    for c in 0..2 * n {
        let bit = |p: &PauliOperator| {
            if c < n {
                p.x_bits().get(c)
            } else {
                p.z_bits().get(c - n)
            }
        };
        let Some(piv) = (r..rows.len()).find(|&i| bit(&rows[i])) else {
            continue;
        };
        rows.swap(r, piv);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row) {
                *row = mul(row, &pivot);
            }
        }
        r += 1;
    }
    if rows[r..].iter().any(|p| p.sign() != Some(1)) {
        return Err(Error::Inconsistent);
    }
    let out = rows[..r]
        .iter()
        .map(|p| {
            let mut v = BitVec::zeros(2 * n + 1);
            for i in p.symplectic().ones() {
                v.set(i, true);
            }
            v.set(2 * n, p.sign() == Some(-1));
            v
        })
        .collect();
    Ok(GF2Matrix::from_rows(2 * n + 1, out))
}

/// A full-rank stabilizer group, i.e. a pure stabilizer state.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizerState {
    group: StabilizerGroup,
}

impl StabilizerState {
    pub fn new(group: StabilizerGroup) -> Result<Self> {
        let rank = group.rank();
        if rank != group.n() {
            return Err(Error::NotAState { rank, n: group.n() });
        }
        group.canonical_form()?;
        Ok(StabilizerState { group })
    }

    pub fn group(&self) -> &StabilizerGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, ws: &[&str]) -> StabilizerGroup {
        StabilizerGroup::new(n, ws.iter().map(|w| w.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(g(3, &["ZZI", "IZZ", "ZIZ"]).rank(), 2);
        assert_eq!(g(3, &[]).rank(), 0);
    }

    #[test]
    fn membership_examples() {
        let grp = g(3, &["ZZI", "IZZ"]);
        assert_eq!(
            grp.contains(&"ZIZ".parse().unwrap()),
            Membership::Member(vec![0, 1])
        );
        let one = g(2, &["ZZ"]);
        assert_eq!(
            one.contains(&"-ZZ".parse().unwrap()),
            Membership::SignMismatch(vec![0])
        );
        assert_eq!(one.contains(&"XI".parse().unwrap()), Membership::Absent);
    }

    #[test]
    fn canonical_form_ignores_order_and_presentation() {
        let a = g(2, &["ZZ"]);
        let b = g(2, &["ZZ"]);
        assert!(a.same_group(&b).unwrap());
        let c = g(2, &["XI", "IZ"]);
        let d = g(2, &["IZ", "XI"]);
        assert!(c.same_group(&d).unwrap());
        assert!(!g(2, &["ZZ"]).same_group(&g(2, &["-ZZ"])).unwrap());
    }

    #[test]
    fn canonical_form_tracks_signs_through_products() {
        // {XX, ZZ} and {-YY, ZZ} generate the same group since XX·ZZ = -YY.
        let a = g(2, &["XX", "ZZ"]);
        let b = g(2, &["-YY", "ZZ"]);
        assert!(a.same_group(&b).unwrap());
        let c = g(2, &["YY", "ZZ"]);
        assert!(!a.same_group(&c).unwrap());
    }

    #[test]
    fn inconsistent_group_is_reported() {
        let bad = g(1, &["Z", "-Z"]);
        assert_eq!(bad.canonical_form(), Err(Error::Inconsistent));
    }

    #[test]
    fn anticommuting_generators_rejected() {
        let r = StabilizerGroup::new(1, vec!["X".parse().unwrap(), "Z".parse().unwrap()]);
        assert_eq!(r.unwrap_err(), Error::Anticommuting(0, 1));
    }

    #[test]
    fn state_requires_full_rank() {
        assert!(StabilizerState::new(g(2, &["ZZ"])).is_err());
        assert!(StabilizerState::new(g(2, &["ZZ", "XX"])).is_ok());
    }
}
