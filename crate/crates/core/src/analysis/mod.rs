//! Structural checks on the image of a code under its disentangler.

mod ladders;

pub use ladders::{induced_ladders, InducedLadder, LadderDescriptor, LadderSet};

use crate::codes::{build_toric_code, ground_state_completion, CheckType, CodeInstance, CodeKind};
use crate::error::{Error, Result};
use crate::ghz::{build_color_disentangler, build_toric_disentangler, DisentanglerMap};
use crate::group::{rank_of, Membership, StabilizerGroup, StabilizerState};
use crate::pauli::{commutes, PauliOperator};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

pub const SCHEMA_VERSION: u32 = 1;

/// Builds the disentangler that matches the code family.
pub fn disentangler_for(code: &CodeInstance) -> Result<DisentanglerMap> {
    let lat = code
        .lattice()
        .ok_or_else(|| Error::Geometry("code has no lattice".into()))?;
    match code.kind() {
        CodeKind::Color => build_color_disentangler(lat),
        CodeKind::Toric => build_toric_disentangler(lat),
        _ => Err(Error::KindMismatch {
            expected: "toric or color code",
            got: lat.kind().name(),
        }),
    }
}

pub fn map_all(map: &DisentanglerMap, ops: &[PauliOperator]) -> Result<Vec<PauliOperator>> {
    ops.iter().map(|p| map.map_pauli(p)).collect()
}

/// A connected set of operators and the qubits they touch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub qubits: Vec<usize>,
    pub generators: Vec<usize>,
}

/// Connected components of the operator–qubit support graph, ordered by
/// smallest qubit. Identity operators belong to no component.
pub fn support_components(ops: &[PauliOperator]) -> Vec<Component> {
    let n = ops.first().map_or(0, |p| p.n());
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let mut used = vec![false; n];
    for p in ops {
        let mut it = p.support().ones().collect::<Vec<_>>().into_iter();
        if let Some(first) = it.next() {
            used[first] = true;
            for q in it {
                used[q] = true;
                let (a, b) = (find(&mut parent, first), find(&mut parent, q));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Component> = Default::default();
    for q in (0..n).filter(|&q| used[q]) {
        let r = find(&mut parent, q);
        by_root
            .entry(r)
            .or_insert_with(|| Component {
                qubits: Vec::new(),
                generators: Vec::new(),
            })
            .qubits
            .push(q);
    }
    for (i, p) in ops.iter().enumerate() {
        if let Some(q) = p.support().first_one() {
            let r = find(&mut parent, q);
            by_root.get_mut(&r).unwrap().generators.push(i);
        }
    }
    // Roots are minimal members, so map order is order by smallest qubit.
    by_root.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeFailure {
    pub generator: usize,
    pub image: String,
    pub reason: String,
}

/// Checks each image against the shape its generator type should take:
/// color code `B^x ↦` pure X of weight 4 and `B^z ↦` pure Z of weight 3 on
/// GHZ qubits of one bond color; toric `A_v ↦` weight-4 X with 2 GHZ and 2
/// passthrough qubits and `B_p ↦` weight-3 Z with 1 GHZ qubit.
pub fn shape_failures(
    code: &CodeInstance,
    map: &DisentanglerMap,
    images: &[PauliOperator],
) -> Vec<ShapeFailure> {
    let mut out = Vec::new();
    for (i, (img, prov)) in images.iter().zip(code.provenance()).enumerate() {
        let qs: Vec<usize> = img.support().ones().collect();
        let ghz = qs.iter().filter(|&&q| map.is_ghz(q)).count();
        let is_x = prov.check == Some(CheckType::X);
        let reason = match code.kind() {
            CodeKind::Color => {
                let colors: BTreeSet<_> = qs.iter().map(|&q| map.ghz_color(q)).collect();
                let (want_w, type_ok) = if is_x {
                    (4, img.is_x_type())
                } else {
                    (3, img.is_z_type())
                };
                if !type_ok {
                    Some(format!("expected pure {}", if is_x { "X" } else { "Z" }))
                } else if qs.len() != want_w {
                    Some(format!("weight {} instead of {want_w}", qs.len()))
                } else if ghz != qs.len() {
                    Some("touches a non-GHZ qubit".to_string())
                } else if colors.len() != 1 {
                    Some(format!("touches {} bond colors", colors.len()))
                } else {
                    None
                }
            }
            CodeKind::Toric => {
                let (want_w, want_g, type_ok) = if is_x {
                    (4, 2, img.is_x_type())
                } else {
                    (3, 1, img.is_z_type())
                };
                if !type_ok {
                    Some(format!("expected {}-type", if is_x { "X" } else { "Z" }))
                } else if qs.len() != want_w || ghz != want_g {
                    Some(format!(
                        "weight {} with {ghz} GHZ qubits instead of {want_w} with {want_g}",
                        qs.len()
                    ))
                } else {
                    None
                }
            }
            _ => Some("no shape rule for this code family".to_string()),
        };
        if let Some(reason) = reason {
            out.push(ShapeFailure {
                generator: i,
                image: img.to_string(),
                reason,
            });
        }
    }
    out
}

/// Generator pairs whose commutation changed under the map.
pub fn commutation_violations(
    originals: &[PauliOperator],
    images: &[PauliOperator],
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..originals.len() {
        for j in i + 1..originals.len() {
            if commutes(&originals[i], &originals[j]) != commutes(&images[i], &images[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipEntry {
    pub generator: usize,
    pub ladder: Option<String>,
    pub result: Membership,
}

/// Membership of each image in the code of its home ladder.
pub fn ladder_membership(set: &LadderSet, images: &[PauliOperator]) -> Vec<MembershipEntry> {
    images
        .iter()
        .enumerate()
        .map(|(i, img)| match set.homes.get(i).copied().flatten() {
            Some(l) => MembershipEntry {
                generator: i,
                ladder: Some(set.ladders[l].label.clone()),
                result: set.ladders[l].transported.contains(img),
            },
            None => MembershipEntry {
                generator: i,
                ladder: None,
                result: Membership::Absent,
            },
        })
        .collect()
}

/// Components whose qubits are not contained in a single ladder register.
pub fn unconfined_components(set: &LadderSet, comps: &[Component]) -> Vec<usize> {
    comps
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            !set.ladders
                .iter()
                .any(|l| c.qubits.iter().all(|q| l.register.binary_search(q).is_ok()))
        })
        .map(|(i, _)| i)
        .collect()
}

/// Pairs of same-color ladders sharing a GHZ qubit.
pub fn same_color_overlaps(set: &LadderSet) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (i, a) in set.ladders.iter().enumerate() {
        for b in &set.ladders[i + 1..] {
            if a.color == b.color
                && a.ghz_qubits
                    .iter()
                    .any(|q| b.ghz_qubits.binary_search(q).is_ok())
            {
                out.push((a.label.clone(), b.label.clone()));
            }
        }
    }
    out
}

/// Everything the image checks look at, for one list of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageChecks {
    pub shape_failures: BTreeSet<usize>,
    pub commutation_violations: BTreeSet<(usize, usize)>,
    pub rank: usize,
    pub non_members: BTreeSet<usize>,
    pub unconfined_qubits: BTreeSet<usize>,
}

impl ImageChecks {
    pub fn evaluate(
        code: &CodeInstance,
        map: &DisentanglerMap,
        set: &LadderSet,
        images: &[PauliOperator],
    ) -> Self {
        let comps = support_components(images);
        let unconfined = unconfined_components(set, &comps);
        ImageChecks {
            shape_failures: shape_failures(code, map, images)
                .iter()
                .map(|f| f.generator)
                .collect(),
            commutation_violations: commutation_violations(code.generators(), images)
                .into_iter()
                .collect(),
            rank: rank_of(code.n(), images),
            non_members: ladder_membership(set, images)
                .iter()
                .filter(|m| !m.result.is_member())
                .map(|m| m.generator)
                .collect(),
            unconfined_qubits: unconfined
                .iter()
                .flat_map(|&c| comps[c].qubits.clone())
                .collect(),
        }
    }

    /// True if `self` shows a failure absent from `baseline`.
    pub fn detects_change_from(&self, baseline: &ImageChecks) -> bool {
        !self.shape_failures.is_subset(&baseline.shape_failures)
            || !self
                .commutation_violations
                .is_subset(&baseline.commutation_violations)
            || self.rank != baseline.rank
            || !self.non_members.is_subset(&baseline.non_members)
            || !self
                .unconfined_qubits
                .is_subset(&baseline.unconfined_qubits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupRelation {
    Equal,
    ProperSubgroup,
    ProperSupergroup,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderReport {
    pub label: String,
    pub color: String,
    pub descriptor: LadderDescriptor,
    pub qubits: Vec<usize>,
    pub ghz_qubits: usize,
    pub home_generators: Vec<usize>,
    pub members: usize,
    pub sign_mismatches: usize,
    pub absent: usize,
    /// Rank of the images of the home generators.
    pub image_rank: usize,
    /// Rank of the full ladder code.
    pub ladder_rank: usize,
    pub relation: GroupRelation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub qubits: Vec<usize>,
    pub generators: Vec<usize>,
    pub label: String,
    pub rank: usize,
    pub ladder: Option<LadderDescriptor>,
    /// Every component generator lies in the matched ladder code.
    pub inside_ladder: Option<bool>,
    /// Every ladder generator lies in the component group.
    pub ladder_inside: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBookkeeping {
    pub n: usize,
    pub original_rank: usize,
    pub mapped_rank: usize,
    pub component_rank_sum: usize,
    pub matched_ladder_rank_sum: usize,
    pub k_original: usize,
    /// `Σ (n_ℓ − rank_ℓ) − k` over support components.
    pub delta: i64,
    /// `Σ (n_ℓ − rank_ℓ) − k` over induced ladders, using the image ranks of
    /// their home generators.
    pub ladder_delta: i64,
}

impl RankBookkeeping {
    pub fn hard_equalities_hold(&self) -> bool {
        self.original_rank == self.mapped_rank && self.component_rank_sum == self.mapped_rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntropyEntry {
    pub label: String,
    pub qubits: usize,
    pub entropy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub kind: CodeKind,
    pub size: usize,
    pub n: usize,
    pub generators: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisentanglerSummary {
    pub tableaux: usize,
    pub tableau_sizes: Vec<usize>,
    pub untouched: usize,
    pub all_tableaux_valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisentangleReport {
    pub schema_version: u32,
    pub code: CodeSummary,
    pub disentangler: DisentanglerSummary,
    pub commutation_preserved: bool,
    pub shape_checked: usize,
    pub shape_failures: Vec<ShapeFailure>,
    /// Images whose sign is `-1`.
    pub sign_anomalies: Vec<usize>,
    pub components: Vec<ComponentReport>,
    /// Components of the images that pass their shape check.
    pub bulk_components: Vec<ComponentReport>,
    pub ladders: Vec<LadderReport>,
    pub ladder_geometry_mismatches: Vec<String>,
    pub unconfined_components: Vec<usize>,
    pub same_color_overlaps: Vec<(String, String)>,
    pub membership: Vec<MembershipEntry>,
    pub ranks: RankBookkeeping,
    /// Entropy of each ladder register in the mapped ground state.
    pub entropy: Vec<EntropyEntry>,
}

impl DisentangleReport {
    pub fn members(&self) -> usize {
        self.membership
            .iter()
            .filter(|m| m.result.is_member())
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn relation(a_in_b: bool, b_in_a: bool) -> GroupRelation {
    match (a_in_b, b_in_a) {
        (true, true) => GroupRelation::Equal,
        (true, false) => GroupRelation::ProperSubgroup,
        (false, true) => GroupRelation::ProperSupergroup,
        (false, false) => GroupRelation::Incomparable,
    }
}

/// Compares an induced ladder with the images of its home generators.
pub fn match_ladder(
    ladder: &InducedLadder,
    images: &[PauliOperator],
    home: &[usize],
) -> Result<LadderReport> {
    let n = ladder.transported.n();
    let imgs: Vec<PauliOperator> = home.iter().map(|&i| images[i].clone()).collect();
    let results: Vec<Membership> = imgs
        .iter()
        .map(|p| ladder.transported.contains(p))
        .collect();
    let count = |f: fn(&Membership) -> bool| results.iter().filter(|r| f(r)).count();
    let image_rank = rank_of(n, &imgs);
    let in_ladder = results.iter().all(Membership::is_member);
    let ladder_in = match StabilizerGroup::new(n, imgs) {
        Ok(g) => ladder
            .transported
            .generators()
            .iter()
            .all(|p| g.contains(p).is_member()),
        Err(_) => false,
    };
    Ok(LadderReport {
        label: ladder.label.clone(),
        color: ladder.color.clone(),
        descriptor: LadderDescriptor {
            length: ladder.length,
            closed: ladder.closed,
        },
        qubits: ladder.register.clone(),
        ghz_qubits: ladder.ghz_qubits.len(),
        home_generators: home.to_vec(),
        members: count(|r| matches!(r, Membership::Member(_))),
        sign_mismatches: count(|r| matches!(r, Membership::SignMismatch(_))),
        absent: count(|r| matches!(r, Membership::Absent)),
        image_rank,
        ladder_rank: ladder.transported.rank(),
        relation: relation(in_ladder, ladder_in),
    })
}

fn component_report(
    comp: &Component,
    images: &[PauliOperator],
    set: &LadderSet,
    n: usize,
) -> ComponentReport {
    let imgs: Vec<PauliOperator> = comp.generators.iter().map(|&i| images[i].clone()).collect();
    let matched = set.ladders.iter().find(|l| l.register == comp.qubits);
    let group = StabilizerGroup::new(n, imgs.clone()).ok();
    let label = match matched {
        Some(l) => l.label.clone(),
        None => {
            let hit: BTreeSet<&str> = set
                .ladders
                .iter()
                .filter(|l| {
                    comp.qubits
                        .iter()
                        .any(|q| l.register.binary_search(q).is_ok())
                })
                .map(|l| l.label.as_str())
                .collect();
            format!("spans {} ladders", hit.len())
        }
    };
    ComponentReport {
        qubits: comp.qubits.clone(),
        generators: comp.generators.clone(),
        label,
        rank: rank_of(n, &imgs),
        ladder: matched.map(|l| LadderDescriptor {
            length: l.length,
            closed: l.closed,
        }),
        inside_ladder: matched.map(|l| imgs.iter().all(|p| l.transported.contains(p).is_member())),
        ladder_inside: matched.map(|l| {
            group.as_ref().is_some_and(|g| {
                l.transported
                    .generators()
                    .iter()
                    .all(|p| g.contains(p).is_member())
            })
        }),
    }
}

/// Stabilizer entropy `S(A) = |A| − log₂|S_A|`, where `log₂|S_A| = n − rank`
/// of the generators restricted to the complement of `A`.
pub fn entanglement_entropy(state: &StabilizerState, a: &[usize]) -> Result<usize> {
    let n = state.n();
    if let Some(&q) = a.iter().find(|&&q| q >= n) {
        return Err(Error::Geometry(format!(
            "cut qubit {q} outside a {n}-qubit register"
        )));
    }
    let inside: BTreeSet<usize> = a.iter().copied().collect();
    let outside = crate::bits::BitVec::from_indices(n, (0..n).filter(|q| !inside.contains(q)));
    let restricted: Vec<PauliOperator> = state
        .group()
        .generators()
        .iter()
        .map(|g| g.restricted(&outside))
        .collect();
    let kernel = n - rank_of(n, &restricted);
    Ok(inside.len() - kernel)
}

/// Entropy of every induced ladder register in a mapped state.
pub fn inter_ladder_entropy(
    mapped: &StabilizerState,
    set: &LadderSet,
) -> Result<Vec<EntropyEntry>> {
    set.ladders
        .iter()
        .map(|l| {
            Ok(EntropyEntry {
                label: l.label.clone(),
                qubits: l.register.len(),
                entropy: entanglement_entropy(mapped, &l.register)?,
            })
        })
        .collect()
}

/// Image of the completed ground state.
pub fn mapped_state(code: &CodeInstance, map: &DisentanglerMap) -> Result<StabilizerState> {
    let st = ground_state_completion(code)?;
    let imgs = map_all(map, st.group().generators())?;
    StabilizerState::new(StabilizerGroup::new(code.n(), imgs)?)
}

pub fn rank_bookkeeping(
    code: &CodeInstance,
    images: &[PauliOperator],
    comps: &[Component],
    set: &LadderSet,
) -> RankBookkeeping {
    let n = code.n();
    let original_rank = code.group().rank();
    let k = n - original_rank;
    let comp_ranks: Vec<(usize, usize)> = comps
        .iter()
        .map(|c| {
            let imgs: Vec<PauliOperator> =
                c.generators.iter().map(|&i| images[i].clone()).collect();
            (c.qubits.len(), rank_of(n, &imgs))
        })
        .collect();
    let ladder_ranks: Vec<(usize, usize)> = set
        .ladders
        .iter()
        .enumerate()
        .map(|(li, l)| {
            let imgs: Vec<PauliOperator> = set
                .homes
                .iter()
                .enumerate()
                .filter(|(_, h)| **h == Some(li))
                .map(|(i, _)| images[i].clone())
                .collect();
            (l.register.len(), rank_of(n, &imgs))
        })
        .collect();
    let deficit =
        |v: &[(usize, usize)]| v.iter().map(|&(q, r)| q as i64 - r as i64).sum::<i64>() - k as i64;
    RankBookkeeping {
        n,
        original_rank,
        mapped_rank: rank_of(n, images),
        component_rank_sum: comp_ranks.iter().map(|c| c.1).sum(),
        matched_ladder_rank_sum: set
            .ladders
            .iter()
            .filter(|l| comps.iter().any(|c| c.qubits == l.register))
            .map(|l| l.transported.rank())
            .sum(),
        k_original: k,
        delta: deficit(&comp_ranks),
        ladder_delta: deficit(&ladder_ranks),
    }
}

/// Full pipeline: map, check shapes and commutation, reconstruct ladders,
/// test membership, and do rank and entropy bookkeeping.
pub fn analyze(code: &CodeInstance) -> Result<DisentangleReport> {
    let map = disentangler_for(code)?;
    let images = map_all(&map, code.generators())?;
    let set = induced_ladders(code, &map)?;
    let n = code.n();

    let shapes = shape_failures(code, &map, &images);
    let bad: BTreeSet<usize> = shapes.iter().map(|f| f.generator).collect();
    let comps = support_components(&images);
    let bulk_imgs: Vec<PauliOperator> = images
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if bad.contains(&i) {
                PauliOperator::identity(n)
            } else {
                p.clone()
            }
        })
        .collect();
    let bulk = support_components(&bulk_imgs);

    let ladders = set
        .ladders
        .iter()
        .enumerate()
        .map(|(li, l)| {
            let home: Vec<usize> = (0..images.len())
                .filter(|&i| set.homes[i] == Some(li))
                .collect();
            match_ladder(l, &images, &home)
        })
        .collect::<Result<Vec<_>>>()?;

    let mapped = mapped_state(code, &map)?;
    Ok(DisentangleReport {
        schema_version: SCHEMA_VERSION,
        code: CodeSummary {
            kind: code.kind(),
            size: code.lattice().map_or(0, |l| l.size()),
            n,
            generators: code.generators().len(),
            k: crate::codes::degeneracy(code),
        },
        disentangler: DisentanglerSummary {
            tableaux: map.tableaux().len(),
            tableau_sizes: map.tableaux().iter().map(|t| t.len()).collect(),
            untouched: map.untouched().len(),
            all_tableaux_valid: map.tableau_reports().iter().all(|r| r.passed()),
        },
        commutation_preserved: commutation_violations(code.generators(), &images).is_empty(),
        shape_checked: images.len(),
        shape_failures: shapes,
        sign_anomalies: images
            .iter()
            .enumerate()
            .filter(|(_, p)| p.sign() != Some(1))
            .map(|(i, _)| i)
            .collect(),
        components: comps
            .iter()
            .map(|c| component_report(c, &images, &set, n))
            .collect(),
        bulk_components: bulk
            .iter()
            .map(|c| component_report(c, &images, &set, n))
            .collect(),
        ladders,
        ladder_geometry_mismatches: set.mismatches.clone(),
        unconfined_components: unconfined_components(&set, &comps),
        same_color_overlaps: same_color_overlaps(&set),
        membership: ladder_membership(&set, &images),
        ranks: rank_bookkeeping(code, &images, &comps, &set),
        entropy: inter_ladder_entropy(&mapped, &set)?,
    })
}

/// Ladder code on a standalone ring strip, for comparisons in tests.
pub fn strip_code(r: usize) -> Result<CodeInstance> {
    build_toric_code(&crate::lattice::build_triangular_ladder(r, false)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ops(ws: &[&str]) -> Vec<PauliOperator> {
        ws.iter().map(|w| w.parse().unwrap()).collect()
    }

    #[test]
    fn components_example() {
        let c = support_components(&ops(&["XXIIII", "IZZIII", "IIIIXI"]));
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].qubits, vec![0, 1, 2]);
        assert_eq!(c[0].generators, vec![0, 1]);
        assert_eq!(c[1].qubits, vec![4]);
    }

    fn state(ws: &[&str]) -> StabilizerState {
        let o = ops(ws);
        StabilizerState::new(StabilizerGroup::new(o[0].n(), o).unwrap()).unwrap()
    }

    #[test]
    fn entropy_examples() {
        let prod = state(&["ZII", "IZI", "IIZ"]);
        assert_eq!(entanglement_entropy(&prod, &[0, 2]).unwrap(), 0);
        let bell = state(&["XX", "ZZ"]);
        assert_eq!(entanglement_entropy(&bell, &[0]).unwrap(), 1);
        let ghz = state(&["XXX", "ZZI", "IZZ"]);
        assert_eq!(entanglement_entropy(&ghz, &[0]).unwrap(), 1);
        assert_eq!(entanglement_entropy(&ghz, &[0, 1]).unwrap(), 1);
        assert_eq!(entanglement_entropy(&ghz, &[]).unwrap(), 0);
        assert_eq!(entanglement_entropy(&ghz, &[0, 1, 2]).unwrap(), 0);
        assert!(entanglement_entropy(&ghz, &[3]).is_err());
    }
}
