//! Brauer graphs: parsing, domestic classification and the quiver with
//! relations of the associated Brauer graph algebra.
//!
//! A Brauer graph is a connected ribbon graph. Each edge has two half-edges,
//! `(edge, 0)` at its first end and `(edge, 1)` at its second, and each vertex
//! carries the clockwise cyclic order of the half-edges incident to it.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    MalformedDocument(String),
    #[error("the graph is not connected")]
    DisconnectedGraph,
    #[error("rotation mismatch: {0}")]
    RotationMismatch(String),
    #[error("only multiplicity one is supported, vertex {0} has multiplicity {1}")]
    UnsupportedMultiplicity(String, u32),
}

/// A half-edge: the end `slot` of edge `edge`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: String,
    pub slot: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct VertexRecord {
    id: String,
    multiplicity: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GraphDocument {
    vertices: Vec<VertexRecord>,
    edges: Vec<Edge>,
    rotation: BTreeMap<String, Vec<HalfEdge>>,
}

/// A validated Brauer graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerGraph {
    pub multiplicity: BTreeMap<String, u32>,
    pub edges: Vec<Edge>,
    /// Clockwise cyclic order of half-edges at each vertex.
    pub rotation: BTreeMap<String, Vec<HalfEdge>>,
}

impl BrauerGraph {
    /// Builds and validates a graph from its parts.
    pub fn new(
        multiplicity: BTreeMap<String, u32>,
        edges: Vec<Edge>,
        rotation: BTreeMap<String, Vec<HalfEdge>>,
    ) -> Result<Self, GraphError> {
        let g = BrauerGraph { multiplicity, edges, rotation };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), GraphError> {
        for (v, m) in &self.multiplicity {
            if *m == 0 {
                return Err(GraphError::MalformedDocument(format!("vertex {v} has multiplicity 0")));
            }
        }
        let mut edge_ids = BTreeSet::new();
        for e in &self.edges {
            if !edge_ids.insert(e.id.as_str()) {
                return Err(GraphError::MalformedDocument(format!("duplicate edge {}", e.id)));
            }
            for end in &e.ends {
                if !self.multiplicity.contains_key(end) {
                    return Err(GraphError::MalformedDocument(format!("edge {} ends at unknown vertex {end}", e.id)));
                }
            }
        }
        if self.multiplicity.is_empty() {
            return Err(GraphError::MalformedDocument("no vertices".into()));
        }
        for v in self.rotation.keys() {
            if !self.multiplicity.contains_key(v) {
                return Err(GraphError::MalformedDocument(format!("rotation given for unknown vertex {v}")));
            }
        }
        let mut seen = BTreeSet::new();
        for (v, hs) in &self.rotation {
            for h in hs {
                let edge = self
                    .edge(&h.edge)
                    .ok_or_else(|| GraphError::RotationMismatch(format!("unknown edge {} at {v}", h.edge)))?;
                if h.slot > 1 || edge.ends[h.slot as usize] != *v {
                    return Err(GraphError::RotationMismatch(format!(
                        "half-edge ({}, {}) does not end at {v}",
                        h.edge, h.slot
                    )));
                }
                if !seen.insert(h.clone()) {
                    return Err(GraphError::RotationMismatch(format!("half-edge ({}, {}) repeated", h.edge, h.slot)));
                }
            }
        }
        for e in &self.edges {
            for slot in 0..2u8 {
                let h = HalfEdge { edge: e.id.clone(), slot };
                if !seen.contains(&h) {
                    return Err(GraphError::RotationMismatch(format!(
                        "half-edge ({}, {slot}) missing from the rotation at {}",
                        e.id, e.ends[slot as usize]
                    )));
                }
            }
        }
        if !self.is_connected() {
            return Err(GraphError::DisconnectedGraph);
        }
        Ok(())
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &String> {
        self.multiplicity.keys()
    }

    /// Number of half-edges at `v`, loops counted twice.
    pub fn valency(&self, v: &str) -> usize {
        self.rotation.get(v).map_or(0, Vec::len)
    }

    fn is_connected(&self) -> bool {
        let start = match self.multiplicity.keys().next() {
            Some(v) => v.as_str(),
            None => return true,
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                for (a, b) in [(0, 1), (1, 0)] {
                    if e.ends[a] == v && seen.insert(e.ends[b].as_str()) {
                        queue.push_back(e.ends[b].as_str());
                    }
                }
            }
        }
        seen.len() == self.multiplicity.len()
    }

    /// The half-edge following `h` clockwise at its vertex.
    fn successor(&self, v: &str, pos: usize) -> usize {
        (pos + 1) % self.valency(v)
    }
}

/// Parses a JSON graph document.
pub fn parse_graph(text: &str) -> Result<BrauerGraph, GraphError> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| GraphError::MalformedDocument(e.to_string()))?;
    let mut multiplicity = BTreeMap::new();
    for v in doc.vertices {
        if multiplicity.insert(v.id.clone(), v.multiplicity).is_some() {
            return Err(GraphError::MalformedDocument(format!("duplicate vertex {}", v.id)));
        }
    }
    let mut rotation = doc.rotation;
    for v in multiplicity.keys() {
        rotation.entry(v.clone()).or_default();
    }
    BrauerGraph::new(multiplicity, doc.edges, rotation)
}

/// Serializes a graph to the JSON document format.
pub fn graph_to_json(g: &BrauerGraph) -> String {
    let doc = GraphDocument {
        vertices: g.multiplicity.iter().map(|(id, m)| VertexRecord { id: id.clone(), multiplicity: *m }).collect(),
        edges: g.edges.clone(),
        rotation: g.rotation.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("graph documents serialize")
}

/// Domestic type of a Brauer graph algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum DomesticClass {
    TwoDomestic {
        p: usize,
        q: usize,
        n: usize,
        #[serde(rename = "cycleLength")]
        cycle_length: usize,
        #[serde(rename = "insideCount")]
        inside_count: usize,
        #[serde(rename = "outsideCount")]
        outside_count: usize,
    },
    OneDomesticTree,
    OneDomesticOddCycle,
    OutOfScope,
}

/// The edges of the unique cycle of a unicyclic graph, as an oriented walk of
/// `(vertex, outgoing half-edge position, edge)` steps.
fn cycle_walk(g: &BrauerGraph) -> Vec<(String, usize, String)> {
    // Peel leaves until only the cycle remains.
    let mut degree: BTreeMap<&str, usize> = g.vertex_ids().map(|v| (v.as_str(), g.valency(v))).collect();
    let mut removed_edges: BTreeSet<&str> = BTreeSet::new();
    let mut queue: VecDeque<&str> = degree.iter().filter(|(_, d)| **d == 1).map(|(v, _)| *v).collect();
    while let Some(v) = queue.pop_front() {
        if degree[v] != 1 {
            continue;
        }
        let e = g
            .edges
            .iter()
            .find(|e| !removed_edges.contains(e.id.as_str()) && (e.ends[0] == *v || e.ends[1] == *v))
            .expect("a leaf has an incident edge");
        removed_edges.insert(e.id.as_str());
        for end in &e.ends {
            let d = degree.get_mut(end.as_str()).unwrap();
            *d -= 1;
            if *d == 1 {
                queue.push_back(end.as_str());
            }
        }
    }
    let on_cycle = |h: &HalfEdge| !removed_edges.contains(h.edge.as_str());
    let start = g
        .vertex_ids()
        .find(|v| g.rotation[*v].iter().any(on_cycle))
        .expect("a unicyclic graph has a cycle")
        .clone();
    let mut walk = Vec::new();
    let mut v = start.clone();
    let mut out_pos = g.rotation[&v].iter().position(on_cycle).unwrap();
    loop {
        let h = &g.rotation[&v][out_pos];
        let edge = g.edge(&h.edge).unwrap();
        walk.push((v.clone(), out_pos, edge.id.clone()));
        let other = HalfEdge { edge: h.edge.clone(), slot: 1 - h.slot };
        let next = edge.ends[other.slot as usize].clone();
        let in_pos = g.rotation[&next].iter().position(|x| *x == other).unwrap();
        if next == start {
            break;
        }
        out_pos = g.rotation[&next]
            .iter()
            .enumerate()
            .position(|(i, x)| i != in_pos && on_cycle(x))
            .unwrap();
        v = next;
    }
    walk
}

/// Number of edges in the component of `start` after deleting `cut`.
fn subtree_edges(g: &BrauerGraph, start: &str, cut: &str, cycle_edges: &BTreeSet<String>) -> usize {
    let mut seen_edges = BTreeSet::from([cut.to_string()]);
    let mut queue = VecDeque::new();
    let mut visited = BTreeSet::new();
    queue.push_back(start.to_string());
    visited.insert(start.to_string());
    while let Some(v) = queue.pop_front() {
        for e in &g.edges {
            if cycle_edges.contains(&e.id) || seen_edges.contains(&e.id) {
                continue;
            }
            if e.ends[0] == v || e.ends[1] == v {
                seen_edges.insert(e.id.clone());
                for end in &e.ends {
                    if visited.insert(end.clone()) {
                        queue.push_back(end.clone());
                    }
                }
            }
        }
    }
    seen_edges.len()
}

/// Classifies the domestic type of the Brauer graph algebra of `g`.
pub fn classify(g: &BrauerGraph) -> DomesticClass {
    let n = g.edges.len();
    let cycles = n + 1 - g.multiplicity.len();
    let all_one = g.multiplicity.values().all(|m| *m == 1);
    if cycles == 0 {
        let twos = g.multiplicity.values().filter(|m| **m == 2).count();
        let ones = g.multiplicity.values().filter(|m| **m == 1).count();
        if twos == 2 && twos + ones == g.multiplicity.len() {
            return DomesticClass::OneDomesticTree;
        }
        return DomesticClass::OutOfScope;
    }
    if cycles != 1 || !all_one {
        return DomesticClass::OutOfScope;
    }
    let walk = cycle_walk(g);
    let ell = walk.len();
    if ell % 2 == 1 {
        return DomesticClass::OneDomesticOddCycle;
    }
    let cycle_edges: BTreeSet<String> = walk.iter().map(|(_, _, e)| e.clone()).collect();
    let (mut side1, mut side2) = (0, 0);
    for (k, (v, out_pos, _)) in walk.iter().enumerate() {
        // the incoming half-edge at v is the end of the previous cycle edge
        let (prev_v, prev_pos, _) = &walk[(k + ell - 1) % ell];
        let prev_h = &g.rotation[prev_v][*prev_pos];
        let in_h = HalfEdge { edge: prev_h.edge.clone(), slot: 1 - prev_h.slot };
        let rot = &g.rotation[v];
        let in_pos = rot.iter().position(|x| *x == in_h).unwrap();
        let mut pos = g.successor(v, *out_pos);
        let mut inside = true;
        while pos != *out_pos {
            if pos == in_pos {
                inside = false;
            } else if !cycle_edges.contains(&rot[pos].edge) {
                let h = &rot[pos];
                let edge = g.edge(&h.edge).unwrap();
                let far = &edge.ends[1 - h.slot as usize];
                let count = subtree_edges(g, far, &edge.id, &cycle_edges);
                if inside {
                    side1 += count;
                } else {
                    side2 += count;
                }
            }
            pos = g.successor(v, pos);
        }
    }
    let (n1, n2) = if side1 <= side2 { (side1, side2) } else { (side2, side1) };
    DomesticClass::TwoDomestic {
        p: ell / 2 + n1,
        q: ell / 2 + n2,
        n,
        cycle_length: ell,
        inside_count: n1,
        outside_count: n2,
    }
}

/// An arrow of the Gabriel quiver, induced by consecutive half-edges at a
/// Brauer graph vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub source: String,
    pub target: String,
    pub owner: String,
}

/// A path of arrows, listed in the order they are traversed.
pub type Path = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Relation {
    /// `lhs − rhs`.
    Commutativity { lhs: Path, rhs: Path },
    /// A path equal to zero.
    Zero { path: Path },
}

/// Writes a path in composition order, last arrow first.
pub fn path_to_string(path: &Path) -> String {
    path.iter().rev().cloned().collect::<Vec<_>>().join("·")
}

impl Relation {
    pub fn to_text(&self) -> String {
        match self {
            Relation::Commutativity { lhs, rhs } => format!("{} - {}", path_to_string(lhs), path_to_string(rhs)),
            Relation::Zero { path } => path_to_string(path),
        }
    }
}

/// The quiver with relations of a Brauer graph algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuiverPresentation {
    pub quiver_vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub type_i: Vec<Relation>,
    pub type_ii: Vec<Relation>,
    pub type_iii: Vec<Relation>,
}

impl QuiverPresentation {
    /// Whether every quiver vertex has at most two incoming and two outgoing
    /// arrows.
    pub fn is_special_biserial(&self) -> bool {
        self.quiver_vertices.iter().all(|v| {
            self.arrows.iter().filter(|a| a.source == *v).count() <= 2
                && self.arrows.iter().filter(|a| a.target == *v).count() <= 2
        })
    }
}

fn arrow_id(owner: &str, pos: usize) -> String {
    format!("{owner}{pos}")
}

/// The special cycle at `v` starting at the half-edge in position `pos`.
fn special_cycle(g: &BrauerGraph, v: &str, pos: usize) -> Path {
    let val = g.valency(v);
    (0..val).map(|k| arrow_id(v, (pos + k) % val)).collect()
}

/// Builds the quiver with relations of the Brauer graph algebra of `g`.
pub fn build_quiver(g: &BrauerGraph) -> Result<QuiverPresentation, GraphError> {
    if let Some((v, m)) = g.multiplicity.iter().find(|(_, m)| **m != 1) {
        return Err(GraphError::UnsupportedMultiplicity(v.clone(), *m));
    }
    let quiver_vertices: Vec<String> = g.edges.iter().map(|e| e.id.clone()).collect();
    let mut arrows = Vec::new();
    // arrows entering and leaving each half-edge
    let mut into: BTreeMap<HalfEdge, String> = BTreeMap::new();
    let mut out_of: BTreeMap<HalfEdge, String> = BTreeMap::new();
    for (v, rot) in &g.rotation {
        if rot.len() < 2 {
            continue;
        }
        for (pos, h) in rot.iter().enumerate() {
            let next = &rot[g.successor(v, pos)];
            let id = arrow_id(v, pos);
            arrows.push(Arrow { id: id.clone(), source: h.edge.clone(), target: next.edge.clone(), owner: v.clone() });
            out_of.insert(h.clone(), id.clone());
            into.insert(next.clone(), id);
        }
    }
    let mut type_i = Vec::new();
    let mut type_ii = Vec::new();
    for e in &g.edges {
        let mut cycles = Vec::new();
        for slot in 0..2u8 {
            let v = &e.ends[slot as usize];
            if g.valency(v) < 2 {
                continue;
            }
            let h = HalfEdge { edge: e.id.clone(), slot };
            let pos = g.rotation[v].iter().position(|x| *x == h).unwrap();
            let cycle = special_cycle(g, v, pos);
            let mut longer = cycle.clone();
            longer.push(cycle[0].clone());
            type_ii.push(Relation::Zero { path: longer });
            cycles.push(cycle);
        }
        if let [a, b] = cycles.as_slice() {
            type_i.push(Relation::Commutativity { lhs: a.clone(), rhs: b.clone() });
        }
    }
    let mut type_iii = Vec::new();
    for e in &g.edges {
        for slot in 0..2u8 {
            let arriving = HalfEdge { edge: e.id.clone(), slot };
            let leaving = HalfEdge { edge: e.id.clone(), slot: 1 - slot };
            if let (Some(alpha), Some(beta)) = (into.get(&arriving), out_of.get(&leaving)) {
                type_iii.push(Relation::Zero { path: vec![alpha.clone(), beta.clone()] });
            }
        }
    }
    Ok(QuiverPresentation { quiver_vertices, arrows, type_i, type_ii, type_iii })
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders a presentation as a DOT digraph with the relations listed in a
/// leading comment block.
pub fn emit_quiver_dot(qp: &QuiverPresentation) -> String {
    let mut out = String::from("digraph quiver {\n");
    out.push_str("  /* relations\n");
    for (tag, rels) in [("I", &qp.type_i), ("II", &qp.type_ii), ("III", &qp.type_iii)] {
        for r in rels.iter() {
            let _ = writeln!(out, "     type {tag}: {}", r.to_text().replace("*/", "* /"));
        }
    }
    out.push_str("  */\n");
    for v in &qp.quiver_vertices {
        let _ = writeln!(out, "  {};", dot_id(v));
    }
    for a in &qp.arrows {
        let _ = writeln!(out, "  {} -> {} [label={}];", dot_id(&a.source), dot_id(&a.target), dot_id(&a.id));
    }
    out.push_str("}\n");
    out
}
