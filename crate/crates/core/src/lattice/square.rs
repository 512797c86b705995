//! Square torus with qubits on edges.
//!
//! Vertex `(r, c)` has id `r·L + c`. The horizontal edge leaving it to the
//! right is qubit `2(r·L + c)`, the vertical edge leaving it downward is
//! qubit `2(r·L + c) + 1`.

use super::{
    Face, Lattice, LatticeKind, LineTag, Loop, LoopFamily, LoopLabel, Qubit, QubitHost, Site,
};
use crate::error::{Error, Result};

fn wrap(a: i64, l: usize) -> usize {
    a.rem_euclid(l as i64) as usize
}

fn vid(l: usize, r: i64, c: i64) -> usize {
    wrap(r, l) * l + wrap(c, l)
}

fn h(l: usize, r: i64, c: i64) -> usize {
    2 * vid(l, r, c)
}

fn v(l: usize, r: i64, c: i64) -> usize {
    2 * vid(l, r, c) + 1
}

/// Periodic `L × L` square lattice; `L` must be even and at least 2.
pub fn build_square_torus(l: usize) -> Result<Lattice> {
    if l < 2 {
        return Err(Error::Geometry(format!(
            "square torus needs L >= 2, got {l}"
        )));
    }
    if !l.is_multiple_of(2) {
        return Err(Error::Geometry(format!(
            "square torus needs even L so transformed and untouched diagonals alternate around the torus, got {l}"
        )));
    }
    let li = l as i64;
    let sites = (0..li)
        .flat_map(|r| (0..li).map(move |c| Site { coords: [r, c] }))
        .collect();
    let mut qubits = Vec::with_capacity(2 * l * l);
    for r in 0..li {
        for c in 0..li {
            qubits.push(Qubit {
                host: QubitHost::Edge {
                    sites: [vid(l, r, c), vid(l, r, c + 1)],
                },
                coords: [2 * r, 2 * c + 1],
            });
            qubits.push(Qubit {
                host: QubitHost::Edge {
                    sites: [vid(l, r, c), vid(l, r + 1, c)],
                },
                coords: [2 * r + 1, 2 * c],
            });
        }
    }
    let mut faces = Vec::with_capacity(l * l);
    let mut vertex_stars = Vec::with_capacity(l * l);
    for r in 0..li {
        for c in 0..li {
            faces.push(Face {
                boundary: vec![h(l, r, c), v(l, r, c + 1), h(l, r + 1, c), v(l, r, c)],
                color: None,
                coords: [2 * r + 1, 2 * c + 1],
            });
            vertex_stars.push(vec![h(l, r, c), v(l, r, c), h(l, r, c - 1), v(l, r - 1, c)]);
        }
    }
    let lat = Lattice {
        kind: LatticeKind::SquareTorus,
        size: l,
        closed: true,
        sites,
        qubits,
        faces,
        vertex_stars,
        bonds: Vec::new(),
    };
    validate(&lat)?;
    Ok(lat)
}

fn validate(lat: &Lattice) -> Result<()> {
    let l = lat.size;
    let bad = |m: String| Err(Error::Geometry(m));
    if lat.qubits.len() != 2 * l * l || lat.faces.len() != l * l || lat.sites.len() != l * l {
        return bad("square torus counts".into());
    }
    let euler = lat.sites.len() as i64 - lat.qubits.len() as i64 + lat.faces.len() as i64;
    if euler != 0 {
        return bad(format!("Euler characteristic {euler} != 0"));
    }
    let mut in_faces = vec![0usize; lat.qubits.len()];
    for f in &lat.faces {
        if f.boundary.len() != 4 {
            return bad("face without 4 boundary qubits".into());
        }
        for &q in &f.boundary {
            in_faces[q] += 1;
        }
    }
    let mut in_stars = vec![0usize; lat.qubits.len()];
    for s in &lat.vertex_stars {
        if s.len() != 4 {
            return bad("vertex without 4 incident qubits".into());
        }
        for &q in s {
            in_stars[q] += 1;
        }
    }
    if in_faces.iter().chain(&in_stars).any(|&c| c != 2) {
        return bad("some edge is not shared by exactly two faces and two vertices".into());
    }
    Ok(())
}

/// The `L` slope-one staircase lines `h(r, r+k), v(r, r+k+1)` for
/// `r = 0..L`, each of `2L` qubits; defined for any `L >= 2`.
pub fn staircase_lines(l: usize) -> Vec<Vec<usize>> {
    let li = l as i64;
    (0..li)
        .map(|k| {
            (0..li)
                .flat_map(|r| [h(l, r, r + k), v(l, r, r + k + 1)])
                .collect()
        })
        .collect()
}

/// Diagonal lines of a square torus, tagged so that adjacent lines
/// alternate. The line through qubit 0 is untouched.
pub fn diagonal_lines(lat: &Lattice) -> Result<Vec<Loop>> {
    if lat.kind != LatticeKind::SquareTorus {
        return Err(Error::KindMismatch {
            expected: LatticeKind::SquareTorus.name(),
            got: lat.kind.name(),
        });
    }
    Ok(staircase_lines(lat.size)
        .into_iter()
        .enumerate()
        .map(|(k, qubits)| {
            let n = qubits.len();
            Loop {
                qubits,
                closed: true,
                label: LoopLabel {
                    family: LoopFamily::SquareDiagonal,
                    index: k,
                    tag: Some(if k % 2 == 1 {
                        LineTag::Transformed
                    } else {
                        LineTag::Untouched
                    }),
                },
                edge_colors: vec![None; n],
            }
        })
        .collect())
}
