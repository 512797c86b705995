//! Periodic lattices carrying qubits: the square torus (edge qubits), the
//! three-colorable hexagonal torus (vertex qubits) and triangular ladders
//! (edge qubits), together with the loop families the disentangler uses.

mod hex;
mod ladder;
mod square;

pub use hex::{build_hex_torus, horizontal_loops};
pub use ladder::build_triangular_ladder;
pub use square::{build_square_torus, diagonal_lines, staircase_lines};

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    SquareTorus,
    HexTorus,
    TriangularLadder,
}

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::SquareTorus => "square-torus",
            LatticeKind::HexTorus => "hex-torus",
            LatticeKind::TriangularLadder => "triangular-ladder",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    pub fn from_index(i: usize) -> Color {
        Self::ALL[i % 3]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Site {
    pub coords: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QubitHost {
    /// Edge between two sites; equal endpoints mark a self-loop.
    Edge {
        sites: [usize; 2],
    },
    Vertex {
        site: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Qubit {
    pub host: QubitHost,
    pub coords: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Boundary qubits in cyclic order.
    pub boundary: Vec<usize>,
    pub color: Option<Color>,
    pub coords: [i64; 2],
}

/// Lattice edge between two vertex qubits of the hexagonal torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bond {
    pub qubits: [usize; 2],
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    kind: LatticeKind,
    size: usize,
    closed: bool,
    sites: Vec<Site>,
    qubits: Vec<Qubit>,
    faces: Vec<Face>,
    /// Per-site incident qubits; a self-loop appears twice.
    vertex_stars: Vec<Vec<usize>>,
    bonds: Vec<Bond>,
}

impl Lattice {
    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    /// Builder size parameter (L, N or R).
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn qubits(&self) -> &[Qubit] {
        &self.qubits
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertex_stars(&self) -> &[Vec<usize>] {
        &self.vertex_stars
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    /// Faces containing each qubit, in face order.
    pub fn faces_of_qubits(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.qubits.len()];
        for (f, face) in self.faces.iter().enumerate() {
            for &q in &face.boundary {
                out[q].push(f);
            }
        }
        out
    }

    /// Endpoints of an edge-hosted qubit.
    pub fn edge_sites(&self, q: usize) -> Option<[usize; 2]> {
        match self.qubits[q].host {
            QubitHost::Edge { sites } => Some(sites),
            QubitHost::Vertex { .. } => None,
        }
    }

    /// Color of the bond joining two vertex qubits, if they are adjacent.
    pub fn bond_color(&self, a: usize, b: usize) -> Option<Color> {
        self.bonds
            .iter()
            .find(|bd| bd.qubits == [a, b] || bd.qubits == [b, a])
            .map(|bd| bd.color)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopFamily {
    HexHorizontal,
    SquareDiagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineTag {
    Transformed,
    Untouched,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopLabel {
    pub family: LoopFamily,
    pub index: usize,
    pub tag: Option<LineTag>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Loop {
    pub qubits: Vec<usize>,
    pub closed: bool,
    pub label: LoopLabel,
    /// Color of the bond `(q_i, q_{i+1})`, wrap pair last; `None` where
    /// the lattice has no edge colors.
    pub edge_colors: Vec<Option<Color>>,
}

impl Loop {
    /// A closed loop with no lattice metadata, for standalone use.
    pub fn closed_ring(qubits: Vec<usize>) -> Loop {
        let n = qubits.len();
        Loop {
            qubits,
            closed: true,
            label: LoopLabel {
                family: LoopFamily::SquareDiagonal,
                index: 0,
                tag: Some(LineTag::Transformed),
            },
            edge_colors: vec![None; n],
        }
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    pub fn is_transformed(&self) -> bool {
        self.label.tag != Some(LineTag::Untouched)
    }
}
