//! Ladder geometry induced on the image register.
//!
//! The candidate ladders are read off the lattice and the loop layout, not
//! off the mapped operators, so a disagreement between image and candidate
//! localizes to either the map or the geometry.
//!
//! * Color code, ladder color `c`: nodes are the `c` faces, edges are GHZ
//!   qubits on `c` bonds (joining the `c` faces at the two ends of the bond),
//!   triangles are the other faces whose three `c` bonds are all loop bonds.
//! * Toric code: nodes are lattice vertices, edges are untouched qubits
//!   (their own endpoints) and GHZ qubits (joining the vertices where the
//!   neighbouring line pairs meet), triangles are the faces.
//!
//! Each connected piece is ordered into a ring strip and compared with
//! `build_triangular_ladder(R, false)`.

use crate::codes::{build_toric_code, Cell, CodeInstance, CodeKind};
use crate::error::{Error, Result};
use crate::ghz::DisentanglerMap;
use crate::group::StabilizerGroup;
use crate::lattice::{build_triangular_ladder, Color, Lattice, LatticeKind};
use crate::pauli::PauliOperator;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A ladder found in the image geometry, with its code carried onto the
/// full output register.
#[derive(Clone, Debug)]
pub struct InducedLadder {
    pub label: String,
    pub color: String,
    /// Number of triangles `R`.
    pub length: usize,
    pub closed: bool,
    /// Ring order `v_0..v_{R-1}` of the nodes.
    pub nodes: Vec<Cell>,
    /// Cells whose boundary became a triangle of this ladder.
    pub triangle_cells: Vec<Cell>,
    /// Output index of each ladder qubit (`e_i` at `2i`, `r_i` at `2i+1`).
    pub qubit_map: Vec<usize>,
    /// Sorted output indices.
    pub register: Vec<usize>,
    pub ghz_qubits: Vec<usize>,
    pub code: CodeInstance,
    pub transported: StabilizerGroup,
}

#[derive(Clone, Debug, Default)]
pub struct LadderSet {
    pub ladders: Vec<InducedLadder>,
    /// Pieces of the induced geometry that are not ring strips.
    pub mismatches: Vec<String>,
    /// Ladder owning each code generator's cell, if any.
    pub homes: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderDescriptor {
    pub length: usize,
    pub closed: bool,
}

struct Geometry {
    color: String,
    nodes: Vec<Cell>,
    edges: Vec<(usize, [Cell; 2])>,
    triangles: Vec<(Cell, [usize; 3])>,
}

/// Successor of each GHZ output qubit's loop position, as input qubits.
fn loop_next(map: &DisentanglerMap) -> HashMap<usize, usize> {
    let mut next = HashMap::new();
    for t in map.tableaux() {
        let q = &t.loop_().qubits;
        for i in 0..q.len() {
            next.insert(q[i], q[(i + 1) % q.len()]);
        }
    }
    next
}

/// GHZ output index for the bond `{a, b}` if it is a loop bond.
fn ghz_of_bond(next: &HashMap<usize, usize>, a: usize, b: usize) -> Option<usize> {
    if next.get(&a) == Some(&b) {
        Some(a)
    } else if next.get(&b) == Some(&a) {
        Some(b)
    } else {
        None
    }
}

fn color_geometries(lat: &Lattice, map: &DisentanglerMap) -> Vec<Geometry> {
    let next = loop_next(map);
    let faces_of = lat.faces_of_qubits();
    let face_color = |f: usize| lat.faces()[f].color.expect("hex faces are colored");
    let mut bond_color: HashMap<[usize; 2], Color> = HashMap::new();
    for bd in lat.bonds() {
        bond_color.insert(bd.qubits, bd.color);
    }
    let color_of = |a: usize, b: usize| bond_color.get(&[a.min(b), a.max(b)]).copied();

    Color::ALL
        .iter()
        .map(|&c| {
            let nodes = (0..lat.faces().len())
                .filter(|&f| face_color(f) == c)
                .map(Cell::Face)
                .collect();
            let mut edges = Vec::new();
            for (&a, &b) in &next {
                if color_of(a, b) != Some(c) {
                    continue;
                }
                let end = |u: usize, w: usize| {
                    faces_of[u]
                        .iter()
                        .copied()
                        .find(|f| face_color(*f) == c && !faces_of[w].contains(f))
                        .map(Cell::Face)
                };
                if let (Some(fa), Some(fb)) = (end(a, b), end(b, a)) {
                    edges.push((a, [fa, fb]));
                }
            }
            edges.sort_by_key(|e| e.0);
            let mut triangles = Vec::new();
            for (f, face) in lat.faces().iter().enumerate() {
                if face.color == Some(c) {
                    continue;
                }
                let bd = &face.boundary;
                let colored: Vec<(usize, usize)> = (0..bd.len())
                    .map(|i| (bd[i], bd[(i + 1) % bd.len()]))
                    .filter(|&(a, b)| color_of(a, b) == Some(c))
                    .collect();
                let ghz: Vec<usize> = colored
                    .iter()
                    .filter_map(|&(a, b)| ghz_of_bond(&next, a, b))
                    .collect();
                if colored.len() == 3 && ghz.len() == 3 {
                    triangles.push((Cell::Face(f), [ghz[0], ghz[1], ghz[2]]));
                }
            }
            Geometry {
                color: c.name().to_string(),
                nodes,
                edges,
                triangles,
            }
        })
        .collect()
}

fn shared_site(lat: &Lattice, a: usize, b: usize) -> Option<usize> {
    let sa = lat.edge_sites(a)?;
    let sb = lat.edge_sites(b)?;
    sa.iter().copied().find(|s| sb.contains(s))
}

fn toric_geometry(lat: &Lattice, map: &DisentanglerMap) -> Result<Geometry> {
    let next = loop_next(map);
    let mut edges = Vec::new();
    for &q in map.untouched() {
        let [a, b] = lat.edge_sites(q).expect("square torus qubits are edges");
        edges.push((q, [Cell::Vertex(a), Cell::Vertex(b)]));
    }
    for t in map.tableaux() {
        let q = &t.loop_().qubits;
        let len = q.len();
        for i in 0..len {
            let at = |k: usize| q[k % len];
            let a = shared_site(lat, at(i + len - 1), at(i));
            let b = shared_site(lat, at(i + 1), at(i + 2));
            match (a, b) {
                (Some(a), Some(b)) => edges.push((q[i], [Cell::Vertex(a), Cell::Vertex(b)])),
                _ => {
                    return Err(Error::Internal(format!(
                        "diagonal line breaks at position {i}"
                    )))
                }
            }
        }
    }
    edges.sort_by_key(|e| e.0);
    let mut triangles = Vec::new();
    for (f, face) in lat.faces().iter().enumerate() {
        let (ghz, plain): (Vec<usize>, Vec<usize>) =
            face.boundary.iter().partition(|&&q| map.is_ghz(q));
        if ghz.len() != 2 || plain.len() != 2 {
            continue;
        }
        if let Some(m) = ghz_of_bond(&next, ghz[0], ghz[1]) {
            triangles.push((Cell::Face(f), [m, plain[0], plain[1]]));
        }
    }
    Ok(Geometry {
        color: String::new(),
        nodes: (0..lat.sites().len()).map(Cell::Vertex).collect(),
        edges,
        triangles,
    })
}

/// Blue/green label of a toric ladder from the untouched line it contains.
fn toric_color(map: &DisentanglerMap, lat: &Lattice, register: &[usize]) -> String {
    let l = lat.size();
    let lines = crate::lattice::staircase_lines(l);
    let line = lines
        .iter()
        .position(|ln| ln.iter().all(|q| register.binary_search(q).is_ok()) && !map.is_ghz(ln[0]))
        .unwrap_or(0);
    if (line / 2) % 2 == 0 { "blue" } else { "green" }.to_string()
}

/// Nodes, edges `(qubit, ends)` and triangles `(cell, qubits)` of one piece.
type Piece = (Vec<Cell>, Vec<(usize, [Cell; 2])>, Vec<(Cell, [usize; 3])>);

/// Node ring, ladder qubit map and triangle cells in ring order.
type Ring = (Vec<Cell>, Vec<usize>, Vec<Cell>);

fn split_components(g: &Geometry) -> Vec<Piece> {
    let idx: HashMap<Cell, usize> = g.nodes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..g.nodes.len()).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for (_, [a, b]) in &g.edges {
        let (ra, rb) = (find(&mut parent, idx[a]), find(&mut parent, idx[b]));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut groups: BTreeMap<usize, Piece> = BTreeMap::new();
    for (i, &c) in g.nodes.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().0.push(c);
    }
    let mut root_of_edge = HashMap::new();
    for e in &g.edges {
        let r = find(&mut parent, idx[&e.1[0]]);
        root_of_edge.insert(e.0, r);
        groups.entry(r).or_default().1.push(*e);
    }
    for t in &g.triangles {
        if let Some(&r) = root_of_edge.get(&t.1[0]) {
            groups.entry(r).or_default().2.push(*t);
        }
    }
    groups.into_values().filter(|g| !g.1.is_empty()).collect()
}

/// Orders a piece into a ring strip, returning the node ring, the ladder
/// qubit map and the triangle cells in ring order.
fn ring_order(
    edges: &[(usize, [Cell; 2])],
    triangles: &[(Cell, [usize; 3])],
    node_count: usize,
) -> std::result::Result<Ring, String> {
    let r = triangles.len();
    if r < 4 {
        return Err(format!(
            "{r} triangles; a ring strip needs at least 4 to be ordered unambiguously"
        ));
    }
    if node_count != r || edges.len() != 2 * r {
        return Err(format!(
            "{node_count} nodes, {} edges, {r} triangles; a ring strip has R, 2R, R",
            edges.len()
        ));
    }
    let ends: HashMap<usize, [Cell; 2]> = edges.iter().map(|&(q, e)| (q, e)).collect();
    let mut tri_of: HashMap<usize, Vec<usize>> = HashMap::new();
    for (ti, (_, qs)) in triangles.iter().enumerate() {
        for &q in qs {
            if !ends.contains_key(&q) {
                return Err(format!("triangle edge {q} is not in the piece"));
            }
            tri_of.entry(q).or_default().push(ti);
        }
    }
    if tri_of.len() != 2 * r {
        return Err("some edge borders no triangle".into());
    }
    let zig = |q: usize| tri_of[&q].len() == 2;
    if tri_of.values().any(|v| v.len() > 2) {
        return Err("an edge borders more than two triangles".into());
    }
    for (_, qs) in triangles {
        if qs.iter().filter(|&&q| zig(q)).count() != 2 {
            return Err("a triangle without exactly two shared edges".into());
        }
    }
    let start = (0..r)
        .min_by_key(|&t| triangles[t].1.iter().copied().min().unwrap())
        .unwrap();
    let mut order = vec![start];
    let mut via = *triangles[start]
        .1
        .iter()
        .filter(|&&q| zig(q))
        .min()
        .unwrap();
    let mut cur = start;
    loop {
        let nxt = *tri_of[&via].iter().find(|&&t| t != cur).unwrap();
        if nxt == start {
            break;
        }
        if order.len() == r {
            return Err("triangle chain does not close".into());
        }
        order.push(nxt);
        via = *triangles[nxt]
            .1
            .iter()
            .find(|&&q| zig(q) && q != via)
            .unwrap();
        cur = nxt;
    }
    if order.len() != r {
        return Err(format!(
            "triangles form several chains ({} of {r} in the first)",
            order.len()
        ));
    }
    let nodes_of =
        |t: usize| -> BTreeSet<Cell> { triangles[t].1.iter().flat_map(|q| ends[q]).collect() };
    let tri_nodes: Vec<BTreeSet<Cell>> = order.iter().map(|&t| nodes_of(t)).collect();
    if tri_nodes.iter().any(|s| s.len() != 3) {
        return Err("a triangle does not have three distinct corners".into());
    }
    let mut ring = Vec::with_capacity(r);
    for i in 0..r {
        let diff: Vec<Cell> = tri_nodes[i]
            .difference(&tri_nodes[(i + 1) % r])
            .copied()
            .collect();
        if diff.len() != 1 {
            return Err("consecutive triangles do not share exactly one edge".into());
        }
        ring.push(diff[0]);
    }
    let mut qmap = vec![0; 2 * r];
    for i in 0..r {
        let prev = &triangles[order[(i + r - 1) % r]].1;
        let here = &triangles[order[i]].1;
        let e = here.iter().copied().find(|q| zig(*q) && prev.contains(q));
        let rail = here.iter().copied().find(|q| !zig(*q));
        let (Some(e), Some(rail)) = (e, rail) else {
            return Err("cannot identify zigzag and rail edges".into());
        };
        let same = |q: usize, a: Cell, b: Cell| {
            let [x, y] = ends[&q];
            (x, y) == (a, b) || (x, y) == (b, a)
        };
        if !same(e, ring[i], ring[(i + 1) % r]) || !same(rail, ring[i], ring[(i + 2) % r]) {
            return Err("edge endpoints disagree with the ring order".into());
        }
        qmap[2 * i] = e;
        qmap[2 * i + 1] = rail;
    }
    let cells = order.iter().map(|&t| triangles[t].0).collect();
    Ok((ring, qmap, cells))
}

fn transport(n: usize, code: &CodeInstance, qmap: &[usize]) -> Result<StabilizerGroup> {
    let gens = code
        .generators()
        .iter()
        .map(|g| {
            let mut p = PauliOperator::identity(n);
            for (lq, &gq) in qmap.iter().enumerate() {
                let (x, z) = g.qubit(lq);
                p.set_qubit(gq, x, z);
            }
            p.with_phase(g.phase())
        })
        .collect();
    StabilizerGroup::new(n, gens)
}

/// Candidate ladders for a mapped toric or color code.
pub fn induced_ladders(code: &CodeInstance, map: &DisentanglerMap) -> Result<LadderSet> {
    let lat = code
        .lattice()
        .ok_or_else(|| Error::Geometry("code has no lattice".into()))?;
    let geoms = match (code.kind(), lat.kind()) {
        (CodeKind::Color, LatticeKind::HexTorus) => color_geometries(lat, map),
        (CodeKind::Toric, LatticeKind::SquareTorus) => vec![toric_geometry(lat, map)?],
        _ => {
            return Err(Error::KindMismatch {
                expected: "toric or color code",
                got: lat.kind().name(),
            })
        }
    };
    let n = code.n();
    let mut set = LadderSet::default();
    for g in &geoms {
        for (k, (nodes, edges, tris)) in split_components(g).into_iter().enumerate() {
            match ring_order(&edges, &tris, nodes.len()) {
                Ok((ring, qmap, cells)) => {
                    let lad = build_triangular_ladder(ring.len(), false)?;
                    let lcode = build_toric_code(&lad)?;
                    let mut register = qmap.clone();
                    register.sort_unstable();
                    let color = if code.kind() == CodeKind::Toric {
                        toric_color(map, lat, &register)
                    } else {
                        g.color.clone()
                    };
                    let label = format!(
                        "{color}-{}",
                        set.ladders.iter().filter(|l| l.color == color).count()
                    );
                    set.ladders.push(InducedLadder {
                        label,
                        color,
                        length: ring.len(),
                        closed: false,
                        nodes: ring,
                        triangle_cells: cells,
                        ghz_qubits: register
                            .iter()
                            .copied()
                            .filter(|&q| map.is_ghz(q))
                            .collect(),
                        transported: transport(n, &lcode, &qmap)?,
                        qubit_map: qmap,
                        register,
                        code: lcode,
                    });
                }
                Err(why) => set.mismatches.push(format!("{} piece {k}: {why}", g.color)),
            }
        }
    }
    set.homes = code
        .provenance()
        .iter()
        .map(|p| {
            let x_like = matches!(p.check, Some(crate::codes::CheckType::X));
            set.ladders.iter().position(|l| {
                if x_like {
                    l.nodes.contains(&p.cell)
                } else {
                    l.triangle_cells.contains(&p.cell)
                }
            })
        })
        .collect();
    Ok(set)
}
