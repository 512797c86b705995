//! Three-colorable hexagonal torus with qubits on vertices.
//!
//! The honeycomb is laid out as a brick wall with `N/2` rows and `2N`
//! columns. Vertex `(r, c)` has horizontal neighbours `(r, c±1)` and one
//! vertical neighbour: `(r+1, c)` when `r + c` is even, `(r-1, c)` otherwise.
//! The hexagon anchored at `(r, c)` with `r + c` even has corners
//! `(r, c..c+2)` and `(r+1, c..c+2)` and color `((c + 3r)/2) mod 3`.
//!
//! Loop `j` is the armchair zigzag through columns `2j+1` and `2j+2`. Every
//! hexagon meets these loops in a three-bond path on one loop and a single
//! bond on the neighbouring loop, which forces loop lengths to be multiples
//! of 4; together with color closure this gives `N ≡ 0 (mod 12)`.
//!
//! Qubit indices are row-major in loop coordinates `(j, position)`, so loop
//! `j` is the contiguous block `j·N .. (j+1)·N`.

use super::{
    Bond, Color, Face, Lattice, LatticeKind, Loop, LoopFamily, LoopLabel, Qubit, QubitHost, Site,
};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap};

struct Brick {
    rows: usize,
    cols: usize,
}

impl Brick {
    fn id(&self, r: i64, c: i64) -> usize {
        r.rem_euclid(self.rows as i64) as usize * self.cols
            + c.rem_euclid(self.cols as i64) as usize
    }

    fn coords(&self, id: usize) -> (i64, i64) {
        ((id / self.cols) as i64, (id % self.cols) as i64)
    }

    /// Vertical neighbour of `(r, c)`.
    fn rung(&self, r: i64, c: i64) -> usize {
        if (r + c).rem_euclid(2) == 0 {
            self.id(r + 1, c)
        } else {
            self.id(r - 1, c)
        }
    }
}

/// Hexagonal torus of `N²` vertex qubits with `N` horizontal loops.
pub fn build_hex_torus(n: usize) -> Result<Lattice> {
    if n % 2 == 1 {
        return Err(Error::Geometry(format!(
            "hex torus needs N ≡ 0 (mod 12): N = {n} gives an odd vertex count, which no bipartite honeycomb admits"
        )));
    }
    if n < 12 || !n.is_multiple_of(12) {
        return Err(Error::Geometry(format!(
            "hex torus needs N ≡ 0 (mod 12): loops meeting every hexagon in a 3+1 bond split have length divisible by 4, \
             and face 3-coloring needs divisibility by 3; got N = {n}"
        )));
    }
    let b = Brick {
        rows: n / 2,
        cols: 2 * n,
    };
    let nv = b.rows * b.cols;

    // Trace each loop in brick coordinates and assign qubit ids.
    let mut qubit_of = vec![usize::MAX; nv];
    let mut brick_of = Vec::with_capacity(nv);
    for j in 0..n {
        let a = 2 * j as i64 + 1;
        let start = b.id(0, a);
        let mut prev = start;
        let mut cur = b.id(0, a + 1);
        let mut seq = vec![start];
        while cur != start {
            seq.push(cur);
            let (r, c) = b.coords(cur);
            let rung = b.rung(r, c);
            let next = if prev == rung {
                let partner = if (c - a).rem_euclid(b.cols as i64) == 0 {
                    c + 1
                } else {
                    c - 1
                };
                b.id(r, partner)
            } else {
                rung
            };
            prev = cur;
            cur = next;
            if seq.len() > n {
                return Err(Error::Internal(format!(
                    "loop {j} does not close after {n} steps"
                )));
            }
        }
        if seq.len() != n {
            return Err(Error::Internal(format!(
                "loop {j} has length {}",
                seq.len()
            )));
        }
        for &v in &seq {
            if qubit_of[v] != usize::MAX {
                return Err(Error::Internal(format!("loops overlap at vertex {v}")));
            }
            qubit_of[v] = brick_of.len();
            brick_of.push(v);
        }
    }

    let sites: Vec<Site> = brick_of
        .iter()
        .map(|&v| {
            let (r, c) = b.coords(v);
            Site { coords: [r, c] }
        })
        .collect();
    let qubits: Vec<Qubit> = (0..nv)
        .map(|q| Qubit {
            host: QubitHost::Vertex { site: q },
            coords: [(q / n) as i64, (q % n) as i64],
        })
        .collect();

    let mut faces = Vec::with_capacity(nv / 2);
    for r in 0..b.rows as i64 {
        for c in 0..b.cols as i64 {
            if (r + c) % 2 != 0 {
                continue;
            }
            let corners = [
                b.id(r, c),
                b.id(r, c + 1),
                b.id(r, c + 2),
                b.id(r + 1, c + 2),
                b.id(r + 1, c + 1),
                b.id(r + 1, c),
            ];
            faces.push(Face {
                boundary: corners.iter().map(|&v| qubit_of[v]).collect(),
                color: Some(Color::from_index(((c + 3 * r) / 2) as usize)),
                coords: [r, c],
            });
        }
    }

    let mut faces_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (f, face) in faces.iter().enumerate() {
        for &q in &face.boundary {
            faces_at[q].push(f);
        }
    }

    let mut bonds = Vec::new();
    for r in 0..b.rows as i64 {
        for c in 0..b.cols as i64 {
            let u = b.id(r, c);
            let mut nbrs = vec![b.id(r, c + 1)];
            if (r + c) % 2 == 0 {
                nbrs.push(b.id(r + 1, c));
            }
            for w in nbrs {
                let (qu, qw) = (qubit_of[u], qubit_of[w]);
                let color = bond_color(&faces, &faces_at, qu, qw)?;
                bonds.push(Bond {
                    qubits: [qu.min(qw), qu.max(qw)],
                    color,
                });
            }
        }
    }
    bonds.sort_by_key(|bd| bd.qubits);

    let lat = Lattice {
        kind: LatticeKind::HexTorus,
        size: n,
        closed: true,
        sites,
        qubits,
        faces,
        vertex_stars: Vec::new(),
        bonds,
    };
    validate(&lat)?;
    Ok(lat)
}

/// Color shared by the two plaquettes at the ends of bond `(u, w)` that do
/// not contain the bond itself.
fn bond_color(faces: &[Face], faces_at: &[Vec<usize>], u: usize, w: usize) -> Result<Color> {
    let fu: BTreeSet<usize> = faces_at[u].iter().copied().collect();
    let fw: BTreeSet<usize> = faces_at[w].iter().copied().collect();
    let ends: Vec<usize> = fu.symmetric_difference(&fw).copied().collect();
    let sides: Vec<usize> = fu.intersection(&fw).copied().collect();
    if ends.len() != 2 || sides.len() != 2 {
        return Err(Error::Geometry(format!(
            "bond ({u},{w}) is not a honeycomb edge"
        )));
    }
    let c0 = faces[ends[0]].color.unwrap();
    if faces[ends[1]].color != Some(c0) || sides.iter().any(|&f| faces[f].color == Some(c0)) {
        return Err(Error::Geometry(format!(
            "bond ({u},{w}) has no consistent color"
        )));
    }
    Ok(c0)
}

fn validate(lat: &Lattice) -> Result<()> {
    let n = lat.size;
    let bad = |m: String| Err(Error::Geometry(m));
    if lat.qubits.len() != n * n || lat.faces.len() != n * n / 2 || lat.bonds.len() != 3 * n * n / 2
    {
        return bad("hex torus counts".into());
    }
    let mut per_qubit = vec![0usize; n * n];
    for f in &lat.faces {
        let distinct: BTreeSet<_> = f.boundary.iter().collect();
        if f.boundary.len() != 6 || distinct.len() != 6 {
            return bad("face without 6 distinct corners".into());
        }
        for &q in &f.boundary {
            per_qubit[q] += 1;
        }
    }
    if per_qubit.iter().any(|&c| c != 3) {
        return bad("vertex not shared by three faces".into());
    }
    // Proper coloring: faces sharing a bond differ in color.
    let mut bond_faces: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
    for (fi, f) in lat.faces.iter().enumerate() {
        for i in 0..6 {
            let (a, b) = (f.boundary[i], f.boundary[(i + 1) % 6]);
            bond_faces.entry([a.min(b), a.max(b)]).or_default().push(fi);
        }
    }
    for bd in &lat.bonds {
        let fs = bond_faces.get(&bd.qubits).map(Vec::as_slice).unwrap_or(&[]);
        if fs.len() != 2 || lat.faces[fs[0]].color == lat.faces[fs[1]].color {
            return bad(format!("coloring not proper at bond {:?}", bd.qubits));
        }
    }
    Ok(())
}

/// The `N` horizontal loops of a hex torus in index order, with bond colors.
pub fn horizontal_loops(lat: &Lattice) -> Result<Vec<Loop>> {
    if lat.kind != LatticeKind::HexTorus {
        return Err(Error::KindMismatch {
            expected: LatticeKind::HexTorus.name(),
            got: lat.kind.name(),
        });
    }
    let n = lat.size;
    let colors: HashMap<[usize; 2], Color> =
        lat.bonds.iter().map(|bd| (bd.qubits, bd.color)).collect();
    (0..n)
        .map(|j| {
            let qubits: Vec<usize> = (j * n..(j + 1) * n).collect();
            let edge_colors = (0..n)
                .map(|i| {
                    let (a, b) = (qubits[i], qubits[(i + 1) % n]);
                    colors
                        .get(&[a.min(b), a.max(b)])
                        .copied()
                        .map(Some)
                        .ok_or_else(|| {
                            Error::Internal(format!("loop {j} steps off the lattice at {i}"))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Loop {
                qubits,
                closed: true,
                label: LoopLabel {
                    family: LoopFamily::HexHorizontal,
                    index: j,
                    tag: None,
                },
                edge_colors,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n12_counts_and_colors() {
        let lat = build_hex_torus(12).unwrap();
        assert_eq!(lat.n_qubits(), 144);
        assert_eq!(lat.faces().len(), 72);
        let mut counts = [0; 3];
        for f in lat.faces() {
            counts[f.color.unwrap().index()] += 1;
        }
        assert_eq!(counts, [24, 24, 24]);
    }

    #[test]
    fn rejected_sizes() {
        for n in [0, 2, 4, 5, 6, 8, 10, 18] {
            assert!(build_hex_torus(n).is_err(), "{n}");
        }
    }

    #[test]
    fn loops_partition_and_close() {
        let lat = build_hex_torus(12).unwrap();
        let loops = horizontal_loops(&lat).unwrap();
        assert_eq!(loops.len(), 12);
        let mut all: Vec<usize> = loops.iter().flat_map(|l| l.qubits.clone()).collect();
        all.sort();
        assert_eq!(all, (0..144).collect::<Vec<_>>());
        for l in &loops {
            assert!(l.edge_colors.iter().all(Option::is_some));
        }
    }
}
