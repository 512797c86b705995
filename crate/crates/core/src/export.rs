//! JSON dumps and Graphviz DOT rendering of lattices, codes and loops.
//!
//! Every dump is wrapped in an envelope carrying `schema_version`. DOT output
//! depends only on its inputs, so identical calls give identical bytes.

use crate::analysis::SCHEMA_VERSION;
use crate::codes::CodeInstance;
use crate::ghz::GhzTableau;
use crate::lattice::{Color, Lattice, LineTag, Loop};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub kind: String,
    pub data: T,
}

impl<T> Envelope<T> {
    pub fn new(kind: &str, data: T) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            kind: kind.to_string(),
            data,
        }
    }
}

/// Lattice with explicit index tables and derived counts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeDump {
    pub n_sites: usize,
    pub n_qubits: usize,
    pub n_faces: usize,
    pub lattice: Lattice,
}

/// Code with the text form of each generator alongside its provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeDump {
    pub n_qubits: usize,
    pub n_generators: usize,
    pub rank: usize,
    pub k: usize,
    pub generators: Vec<String>,
    pub code: CodeInstance,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

pub fn lattice_json(lat: &Lattice) -> String {
    to_json(&Envelope::new(
        "lattice",
        LatticeDump {
            n_sites: lat.sites().len(),
            n_qubits: lat.n_qubits(),
            n_faces: lat.faces().len(),
            lattice: lat.clone(),
        },
    ))
}

pub fn code_dump(code: &CodeInstance) -> CodeDump {
    let rank = code.group().rank();
    CodeDump {
        n_qubits: code.n(),
        n_generators: code.generators().len(),
        rank,
        k: code.n() - rank,
        generators: code.generators().iter().map(|g| g.to_string()).collect(),
        code: code.clone(),
    }
}

pub fn code_json(code: &CodeInstance) -> String {
    to_json(&Envelope::new("code", code_dump(code)))
}

pub fn tableau_json(t: &GhzTableau) -> String {
    to_json(&Envelope::new("ghz-tableau", t.clone()))
}

fn dot_color(c: Option<Color>) -> &'static str {
    match c {
        Some(Color::Red) => "red",
        Some(Color::Green) => "green",
        Some(Color::Blue) => "blue",
        None => "black",
    }
}

/// DOT graph: qubits are nodes, each face a cluster holding the qubits it is
/// the first face of, face boundaries drawn as edges in the face color (or
/// the bond color where the lattice has one). Loops, when given, mark their
/// qubits and bonds: transformed loops bold, untouched loops dashed.
pub fn lattice_dot(lat: &Lattice, loops: &[Loop]) -> String {
    let faces_of = lat.faces_of_qubits();
    let mut home: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut orphans = Vec::new();
    for (q, fs) in faces_of.iter().enumerate() {
        match fs.iter().min() {
            Some(&f) => home.entry(f).or_default().push(q),
            None => orphans.push(q),
        }
    }
    let mut on_loop: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
    let mut loop_edges: BTreeMap<(usize, usize), (usize, bool)> = BTreeMap::new();
    for (li, lp) in loops.iter().enumerate() {
        let tr = lp.label.tag != Some(LineTag::Untouched);
        for &q in &lp.qubits {
            on_loop.insert(q, (li, tr));
        }
        let n = lp.qubits.len();
        let pairs = if lp.closed { n } else { n.saturating_sub(1) };
        for i in 0..pairs {
            let (a, b) = (lp.qubits[i], lp.qubits[(i + 1) % n]);
            if a != b {
                loop_edges.insert((a.min(b), a.max(b)), (li, tr));
            }
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, "graph lattice {{");
    let _ = writeln!(
        out,
        "  graph [kind=\"{}\", size_param={}, closed={}];",
        lat.kind().name(),
        lat.size(),
        lat.closed()
    );
    let _ = writeln!(out, "  node [shape=circle, fontsize=9];");
    let node = |out: &mut String, q: usize, indent: &str| {
        let mut attrs = format!("label=\"{q}\"");
        if let Some(&(li, tr)) = on_loop.get(&q) {
            let style = if tr { "filled" } else { "dashed" };
            let _ = write!(
                attrs,
                ", loop={li}, line=\"{}\", style={style}",
                if tr { "transformed" } else { "untouched" }
            );
            if tr {
                attrs.push_str(", fillcolor=lightgray");
            }
        }
        let _ = writeln!(out, "{indent}q{q} [{attrs}];");
    };
    for (f, face) in lat.faces().iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_f{f} {{");
        let _ = writeln!(
            out,
            "    label=\"f{f}\"; color={}; face_color=\"{}\";",
            dot_color(face.color),
            face.color.map(|c| c.name()).unwrap_or("none")
        );
        for &q in home.get(&f).into_iter().flatten() {
            node(&mut out, q, "    ");
        }
        let _ = writeln!(out, "  }}");
    }
    for q in orphans {
        node(&mut out, q, "  ");
    }

    let mut edges: BTreeMap<(usize, usize), Option<Color>> = BTreeMap::new();
    for face in lat.faces() {
        let b = &face.boundary;
        for i in 0..b.len() {
            let (u, w) = (b[i], b[(i + 1) % b.len()]);
            if u == w {
                continue;
            }
            let key = (u.min(w), u.max(w));
            let col = lat.bond_color(u, w).or(face.color);
            edges.entry(key).or_insert(col);
        }
    }
    let mut keys: BTreeSet<(usize, usize)> = edges.keys().copied().collect();
    keys.extend(loop_edges.keys().copied());
    for (u, w) in keys {
        let col = edges.get(&(u, w)).copied().flatten();
        let mut attrs = format!("color={}", dot_color(col));
        if let Some(&(li, tr)) = loop_edges.get(&(u, w)) {
            let style = if tr { "bold" } else { "dashed" };
            let _ = write!(attrs, ", style={style}, loop={li}");
        }
        let _ = writeln!(out, "  q{u} -- q{w} [{attrs}];");
    }
    let _ = writeln!(out, "}}");
    out
}
