//! Triangular ladders with qubits on edges.
//!
//! The open ladder (`closed = false`) is a ring-shaped strip of `R`
//! triangles on sites `0..R`: zigzag edges `e_i = (i, i+1)` (qubit `2i`)
//! and rail edges `r_i = (i, i+2)` (qubit `2i+1`), triangles
//! `{e_i, e_{i+1}, r_i}`. Rails lie on the strip boundary and border one
//! triangle each. Odd `R` gives a Möbius strip.
//!
//! The closed ladder glues the two rails of a strip with `R` even, giving
//! the width-one triangular torus on `R/2` sites. Per site `x` there is a
//! rail `h_x = (x, x+1)` (qubit `3x`), a diagonal `d_x = (x, x+1)` (qubit
//! `3x+1`) and a rung `s_x` closing on `x` itself (qubit `3x+2`), with
//! triangles `{s_x, h_x, d_x}` and `{h_x, s_{x+1}, d_x}`. Every edge then
//! borders two triangles and has two endpoints.

use super::{Face, Lattice, LatticeKind, Qubit, QubitHost, Site};
use crate::error::{Error, Result};

pub fn build_triangular_ladder(r: usize, closed: bool) -> Result<Lattice> {
    let lat = if closed {
        closed_ladder(r)?
    } else {
        open_ladder(r)?
    };
    validate(&lat)?;
    Ok(lat)
}

fn open_ladder(r: usize) -> Result<Lattice> {
    if r < 3 {
        return Err(Error::Geometry(format!(
            "open triangular ladder needs R >= 3 triangles, got {r}"
        )));
    }
    let m = |i: i64| i.rem_euclid(r as i64) as usize;
    let e = |i: i64| 2 * m(i);
    let rail = |i: i64| 2 * m(i) + 1;
    let ri = r as i64;
    let sites = (0..ri).map(|i| Site { coords: [i, i % 2] }).collect();
    let mut qubits = Vec::with_capacity(2 * r);
    for i in 0..ri {
        qubits.push(Qubit {
            host: QubitHost::Edge {
                sites: [m(i), m(i + 1)],
            },
            coords: [2 * i + 1, 0],
        });
        qubits.push(Qubit {
            host: QubitHost::Edge {
                sites: [m(i), m(i + 2)],
            },
            coords: [2 * i + 2, 1],
        });
    }
    let faces = (0..ri)
        .map(|i| Face {
            boundary: vec![e(i), e(i + 1), rail(i)],
            color: None,
            coords: [2 * i + 2, 0],
        })
        .collect();
    let vertex_stars = (0..ri)
        .map(|i| vec![e(i - 1), e(i), rail(i), rail(i - 2)])
        .collect();
    Ok(Lattice {
        kind: LatticeKind::TriangularLadder,
        size: r,
        closed: false,
        sites,
        qubits,
        faces,
        vertex_stars,
        bonds: Vec::new(),
    })
}

fn closed_ladder(r: usize) -> Result<Lattice> {
    if r < 4 || !r.is_multiple_of(2) {
        return Err(Error::Geometry(format!(
            "closed triangular ladder needs an even number R >= 4 of triangles so the two rails can be glued, got {r}"
        )));
    }
    let v = r / 2;
    let m = |x: i64| x.rem_euclid(v as i64) as usize;
    let h = |x: i64| 3 * m(x);
    let d = |x: i64| 3 * m(x) + 1;
    let s = |x: i64| 3 * m(x) + 2;
    let vi = v as i64;
    let sites = (0..vi).map(|x| Site { coords: [x, 0] }).collect();
    let mut qubits = Vec::with_capacity(3 * v);
    for x in 0..vi {
        qubits.push(Qubit {
            host: QubitHost::Edge {
                sites: [m(x), m(x + 1)],
            },
            coords: [2 * x + 1, 0],
        });
        qubits.push(Qubit {
            host: QubitHost::Edge {
                sites: [m(x), m(x + 1)],
            },
            coords: [2 * x + 1, 1],
        });
        qubits.push(Qubit {
            host: QubitHost::Edge {
                sites: [m(x), m(x)],
            },
            coords: [2 * x, 1],
        });
    }
    let mut faces = Vec::with_capacity(r);
    for x in 0..vi {
        faces.push(Face {
            boundary: vec![s(x), h(x), d(x)],
            color: None,
            coords: [2 * x + 1, 1],
        });
        faces.push(Face {
            boundary: vec![h(x), s(x + 1), d(x)],
            color: None,
            coords: [2 * x + 2, 0],
        });
    }
    let vertex_stars = (0..vi)
        .map(|x| vec![h(x), d(x), s(x), h(x - 1), d(x - 1), s(x)])
        .collect();
    Ok(Lattice {
        kind: LatticeKind::TriangularLadder,
        size: r,
        closed: true,
        sites,
        qubits,
        faces,
        vertex_stars,
        bonds: Vec::new(),
    })
}

fn validate(lat: &Lattice) -> Result<()> {
    let bad = |m: String| Err(Error::Geometry(m));
    if lat.faces.len() != lat.size {
        return bad("ladder face count".into());
    }
    let mut in_faces = vec![0usize; lat.qubits.len()];
    for f in &lat.faces {
        if f.boundary.len() != 3 {
            return bad("ladder face without 3 edges".into());
        }
        for &q in &f.boundary {
            in_faces[q] += 1;
        }
    }
    let mut in_stars = vec![0usize; lat.qubits.len()];
    for s in &lat.vertex_stars {
        for &q in s {
            in_stars[q] += 1;
        }
    }
    if in_stars.iter().any(|&c| c != 2) {
        return bad("ladder edge without two endpoints".into());
    }
    if lat.closed && in_faces.iter().any(|&c| c != 2) {
        return bad("closed ladder edge not bordering two faces".into());
    }
    if !lat.closed && in_faces.iter().any(|&c| c == 0 || c > 2) {
        return bad("open ladder edge outside the strip".into());
    }
    Ok(())
}
