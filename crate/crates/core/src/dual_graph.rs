//! Dual graphs of totally split compact-type curves.
//!
//! A vertex is an irreducible component (with its geometric genus), an edge
//! is a node. Compact type means the graph is a tree. Smoothing a node is
//! modeled by contracting its edge; a [`GraphFamily`] is a finite list of
//! fibers, each recording which nodes of a total graph persist.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Separator used when naming a vertex obtained by contracting edges.
pub const MERGE_SEPARATOR: char = '+';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("id `{0}` is empty or contains the reserved character '+'")]
    InvalidId(String),
    #[error("edge `{edge}` (index {index}) references missing vertex `{vertex}`")]
    DanglingEdge {
        index: usize,
        edge: String,
        vertex: String,
    },
    #[error("mark `{label}` (index {index}) references missing vertex `{vertex}`")]
    DanglingMark {
        index: usize,
        label: String,
        vertex: String,
    },
    #[error("duplicate mark label `{0}`")]
    DuplicateMark(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph is not of compact type: {0}")]
    NotCompactType(String),
    #[error("duplicate base point `{0}`")]
    DuplicateBasePoint(String),
    #[error("unknown base point `{0}`")]
    UnknownBasePoint(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub ends: [String; 2],
}

impl Edge {
    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other_end(&self, v: &str) -> Option<&str> {
        if self.ends[0] == v {
            Some(&self.ends[1])
        } else if self.ends[1] == v {
            Some(&self.ends[0])
        } else {
            None
        }
    }

    pub fn touches(&self, v: &str) -> bool {
        self.ends[0] == v || self.ends[1] == v
    }
}

/// A marked smooth point lying on a component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mark {
    pub vertex: String,
    pub label: String,
}

/// Wire form of a dual graph, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    pub vertices: Vec<Vertex>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marks: Vec<Mark>,
}

/// A vertex-weighted multigraph with referentially valid ids.
///
/// Construction only checks that ids are unique and references resolve, so
/// that [`DualGraph::validate_compact_type`] can report cycles and
/// disconnections. Operations that need a tree check it themselves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "RawGraph")]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    marks: Vec<Mark>,
    vertex_index: BTreeMap<String, usize>,
    edge_index: BTreeMap<String, usize>,
}

impl From<DualGraph> for RawGraph {
    fn from(g: DualGraph) -> Self {
        RawGraph {
            vertices: g.vertices,
            edges: g.edges,
            marks: g.marks,
        }
    }
}

impl TryFrom<RawGraph> for DualGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        DualGraph::new(raw.vertices, raw.edges, raw.marks)
    }
}

impl<'de> Deserialize<'de> for DualGraph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawGraph::deserialize(de)?;
        DualGraph::try_from(raw).map_err(serde::de::Error::custom)
    }
}

fn check_id(id: &str) -> Result<(), GraphError> {
    if id.is_empty() || id.contains(MERGE_SEPARATOR) {
        Err(GraphError::InvalidId(id.to_string()))
    } else {
        Ok(())
    }
}

/// Outcome of [`DualGraph::validate_compact_type`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompactTypeReport {
    pub is_compact_type: bool,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagnostic {
    /// Edges forming a cycle; every node on it is non-disconnecting.
    Cycle { edges: Vec<String> },
    /// The vertex sets of the connected components.
    Disconnected { components: Vec<Vec<String>> },
    /// The graph has no vertices at all.
    Empty,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Cycle { edges } => write!(f, "cycle through edges [{}]", edges.join(", ")),
            Diagnostic::Disconnected { components } => {
                let parts: Vec<String> = components
                    .iter()
                    .map(|c| format!("{{{}}}", c.join(", ")))
                    .collect();
                write!(f, "disconnected into {}", parts.join(" "))
            }
            Diagnostic::Empty => write!(f, "no vertices"),
        }
    }
}

impl DualGraph {
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        marks: Vec<Mark>,
    ) -> Result<Self, GraphError> {
        let mut vertex_index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            check_id(&v.id)?;
            if vertex_index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id.clone()));
            }
        }
        let mut edge_index = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            check_id(&e.id)?;
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateEdge(e.id.clone()));
            }
            for end in &e.ends {
                if !vertex_index.contains_key(end) {
                    return Err(GraphError::DanglingEdge {
                        index: i,
                        edge: e.id.clone(),
                        vertex: end.clone(),
                    });
                }
            }
        }
        let mut labels = BTreeSet::new();
        for (i, m) in marks.iter().enumerate() {
            if !vertex_index.contains_key(&m.vertex) {
                return Err(GraphError::DanglingMark {
                    index: i,
                    label: m.label.clone(),
                    vertex: m.vertex.clone(),
                });
            }
            if !labels.insert(m.label.clone()) {
                return Err(GraphError::DuplicateMark(m.label.clone()));
            }
        }
        Ok(DualGraph {
            vertices,
            edges,
            marks,
            vertex_index,
            edge_index,
        })
    }

    /// Convenience constructor from `(id, genus)` and `(id, a, b)` tuples.
    pub fn from_parts(
        vertices: &[(&str, u32)],
        edges: &[(&str, &str, &str)],
    ) -> Result<Self, GraphError> {
        Self::new(
            vertices
                .iter()
                .map(|(id, genus)| Vertex {
                    id: id.to_string(),
                    genus: *genus,
                })
                .collect(),
            edges
                .iter()
                .map(|(id, a, b)| Edge {
                    id: id.to_string(),
                    ends: [a.to_string(), b.to_string()],
                })
                .collect(),
            Vec::new(),
        )
    }

    pub fn with_marks(mut self, marks: Vec<Mark>) -> Result<Self, GraphError> {
        self.marks = marks;
        Self::new(self.vertices, self.edges, self.marks)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertex_index.get(id).map(|&i| &self.vertices[i])
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edge_index.get(id).map(|&i| &self.edges[i])
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertex_index.contains_key(id)
    }

    pub fn incident_edges<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.touches(v))
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges
            .iter()
            .map(|e| (e.ends[0] == v) as usize + (e.ends[1] == v) as usize)
            .sum()
    }

    /// Checks that the graph is connected and acyclic.
    pub fn validate_compact_type(&self) -> CompactTypeReport {
        let mut diagnostics = Vec::new();
        if self.vertices.is_empty() {
            diagnostics.push(Diagnostic::Empty);
            return CompactTypeReport {
                is_compact_type: false,
                diagnostics,
            };
        }

        // Grow a spanning forest; any edge joining two vertices already in
        // the same tree closes a cycle, which we recover from the forest path.
        let mut adjacency: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
        let mut component: BTreeMap<&str, usize> = BTreeMap::new();
        for (c, v) in self.vertices.iter().enumerate() {
            component.insert(&v.id, c);
        }
        for e in &self.edges {
            let (a, b) = (e.ends[0].as_str(), e.ends[1].as_str());
            let (ca, cb) = (component[a], component[b]);
            if ca == cb {
                let mut cycle = forest_path(&adjacency, a, b).unwrap_or_default();
                cycle.push(e.id.clone());
                diagnostics.push(Diagnostic::Cycle { edges: cycle });
                continue;
            }
            for c in component.values_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
            adjacency.entry(a).or_default().push((b, &e.id));
            adjacency.entry(b).or_default().push((a, &e.id));
        }

        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for v in &self.vertices {
            groups
                .entry(component[v.id.as_str()])
                .or_default()
                .push(v.id.clone());
        }
        if groups.len() > 1 {
            diagnostics.push(Diagnostic::Disconnected {
                components: groups.into_values().collect(),
            });
        }
        CompactTypeReport {
            is_compact_type: diagnostics.is_empty(),
            diagnostics,
        }
    }

    pub fn is_compact_type(&self) -> bool {
        self.validate_compact_type().is_compact_type
    }

    /// Errors unless the graph is a tree.
    pub fn ensure_tree(&self) -> Result<(), GraphError> {
        let report = self.validate_compact_type();
        if report.is_compact_type {
            Ok(())
        } else {
            let text: Vec<String> = report.diagnostics.iter().map(|d| d.to_string()).collect();
            Err(GraphError::NotCompactType(text.join("; ")))
        }
    }

    /// Arithmetic genus: the sum of component genera, valid because the
    /// dual graph has no cycles.
    pub fn total_genus(&self) -> Result<u32, GraphError> {
        self.ensure_tree()?;
        Ok(self.vertices.iter().map(|v| v.genus).sum())
    }

    /// The two vertex sets left after deleting `edge`, the side containing
    /// the lexicographically smaller endpoint first.
    pub fn split_at_edge(
        &self,
        edge: &str,
    ) -> Result<(BTreeSet<String>, BTreeSet<String>), GraphError> {
        let e = self
            .edge(edge)
            .ok_or_else(|| GraphError::UnknownEdge(edge.to_string()))?;
        self.ensure_tree()?;
        let (lo, hi) = if e.ends[0] <= e.ends[1] {
            (&e.ends[0], &e.ends[1])
        } else {
            (&e.ends[1], &e.ends[0])
        };
        let first = self.reachable_without(lo, edge);
        let second = self.reachable_without(hi, edge);
        Ok((first, second))
    }

    fn reachable_without(&self, start: &str, removed: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([start.to_string()]);
        seen.insert(start.to_string());
        while let Some(v) = queue.pop_front() {
            for e in self.incident_edges(&v) {
                if e.id == removed {
                    continue;
                }
                let w = e.other_end(&v).expect("incident edge");
                if seen.insert(w.to_string()) {
                    queue.push_back(w.to_string());
                }
            }
        }
        seen
    }

    /// Smooths the node `edge`: its endpoints merge into one vertex named by
    /// joining the constituent ids with `+`, carrying the summed genus.
    pub fn contract_edge(&self, edge: &str) -> Result<DualGraph, GraphError> {
        let e = self
            .edge(edge)
            .ok_or_else(|| GraphError::UnknownEdge(edge.to_string()))?;
        let (a, b) = (e.ends[0].clone(), e.ends[1].clone());
        if a == b {
            return Err(GraphError::NotCompactType(format!(
                "edge `{edge}` is a loop"
            )));
        }
        let merged = merged_id(&a, &b);
        let genus = self.vertex(&a).unwrap().genus + self.vertex(&b).unwrap().genus;
        let rename = |v: &str| -> String {
            if v == a || v == b {
                merged.clone()
            } else {
                v.to_string()
            }
        };

        let mut vertices = Vec::with_capacity(self.vertices.len() - 1);
        for v in &self.vertices {
            if v.id == a {
                vertices.push(Vertex {
                    id: merged.clone(),
                    genus,
                });
            } else if v.id != b {
                vertices.push(v.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|x| x.id != edge)
            .map(|x| Edge {
                id: x.id.clone(),
                ends: [rename(&x.ends[0]), rename(&x.ends[1])],
            })
            .collect();
        let marks = self
            .marks
            .iter()
            .map(|m| Mark {
                vertex: rename(&m.vertex),
                label: m.label.clone(),
            })
            .collect();
        Ok(DualGraph::build_unchecked(vertices, edges, marks))
    }

    /// Contracts every edge not listed in `keep`.
    pub fn contract_all_except(&self, keep: &BTreeSet<String>) -> Result<DualGraph, GraphError> {
        for k in keep {
            if self.edge(k).is_none() {
                return Err(GraphError::UnknownEdge(k.clone()));
            }
        }
        let mut g = self.clone();
        for e in &self.edges {
            if !keep.contains(&e.id) {
                g = g.contract_edge(&e.id)?;
            }
        }
        Ok(g)
    }

    fn build_unchecked(vertices: Vec<Vertex>, edges: Vec<Edge>, marks: Vec<Mark>) -> DualGraph {
        let vertex_index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        DualGraph {
            vertices,
            edges,
            marks,
            vertex_index,
            edge_index,
        }
    }

    /// The vertex of this graph whose constituents include `original`.
    ///
    /// After contractions a vertex id is a `+`-joined list of original ids.
    pub fn vertex_containing(&self, original: &str) -> Option<&str> {
        self.vertices
            .iter()
            .find(|v| v.id.split(MERGE_SEPARATOR).any(|part| part == original))
            .map(|v| v.id.as_str())
    }

    /// Transports the graph along `aut`, returning the image graph (listed in
    /// this graph's vertex and edge order) and the relabeling applied.
    pub fn apply_automorphism(
        &self,
        aut: &GraphAutomorphism,
    ) -> Result<(DualGraph, Relabeling), GraphError> {
        let relabel = aut.validate(self)?;
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|v| Vertex {
                id: relabel.vertices[&v.id].clone(),
                genus: v.genus,
            })
            .collect();
        vertices.sort_by_key(|v| self.vertex_index[&v.id]);
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                id: relabel.edges[&e.id].clone(),
                ends: [
                    relabel.vertices[&e.ends[0]].clone(),
                    relabel.vertices[&e.ends[1]].clone(),
                ],
            })
            .collect();
        edges.sort_by_key(|e| self.edge_index[&e.id]);
        let mut marks: Vec<Mark> = self
            .marks
            .iter()
            .map(|m| Mark {
                vertex: relabel.vertices[&m.vertex].clone(),
                label: aut.label(&m.label).to_string(),
            })
            .collect();
        let mark_order: BTreeMap<&str, usize> = self
            .marks
            .iter()
            .enumerate()
            .map(|(i, m)| (m.label.as_str(), i))
            .collect();
        marks.sort_by_key(|m| {
            mark_order
                .get(m.label.as_str())
                .copied()
                .unwrap_or(usize::MAX)
        });
        Ok((DualGraph::build_unchecked(vertices, edges, marks), relabel))
    }

    /// Structural equality ignoring list order and edge orientation.
    pub fn same_structure(&self, other: &DualGraph) -> bool {
        let key = |g: &DualGraph| {
            let vs: BTreeSet<(String, u32)> =
                g.vertices.iter().map(|v| (v.id.clone(), v.genus)).collect();
            let es: BTreeSet<(String, String, String)> = g
                .edges
                .iter()
                .map(|e| {
                    let (a, b) = if e.ends[0] <= e.ends[1] {
                        (e.ends[0].clone(), e.ends[1].clone())
                    } else {
                        (e.ends[1].clone(), e.ends[0].clone())
                    };
                    (e.id.clone(), a, b)
                })
                .collect();
            let ms: BTreeSet<(String, String)> = g
                .marks
                .iter()
                .map(|m| (m.vertex.clone(), m.label.clone()))
                .collect();
            (vs, es, ms)
        };
        key(self) == key(other)
    }
}

fn merged_id(a: &str, b: &str) -> String {
    let mut parts: Vec<&str> = a
        .split(MERGE_SEPARATOR)
        .chain(b.split(MERGE_SEPARATOR))
        .collect();
    parts.sort_unstable();
    parts.join("+")
}

fn forest_path(
    adjacency: &BTreeMap<&str, Vec<(&str, &str)>>,
    from: &str,
    to: &str,
) -> Option<Vec<String>> {
    let mut parent: BTreeMap<&str, (&str, &str)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = Vec::new();
            let mut cur = to;
            while cur != from {
                let (prev, edge) = parent[cur];
                path.push(edge.to_string());
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for &(w, e) in adjacency.get(v).map(|x| x.as_slice()).unwrap_or(&[]) {
            if seen.insert(w) {
                parent.insert(w, (v, e));
                queue.push_back(w);
            }
        }
    }
    None
}

/// One fiber of a family: the nodes of the total graph still present there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fiber {
    pub base: String,
    pub nodal_edges: BTreeSet<String>,
}

/// A finite combinatorial stand-in for a family of compact-type curves: one
/// entry per stratum of the base, each a partial smoothing of `total`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphFamily {
    total: DualGraph,
    fibers: Vec<Fiber>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    total: DualGraph,
    fibers: Vec<Fiber>,
}

impl<'de> Deserialize<'de> for GraphFamily {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawFamily::deserialize(de)?;
        GraphFamily::new(raw.total, raw.fibers).map_err(serde::de::Error::custom)
    }
}

impl GraphFamily {
    pub fn new(total: DualGraph, fibers: Vec<Fiber>) -> Result<Self, GraphError> {
        total.ensure_tree()?;
        let mut bases = BTreeSet::new();
        for f in &fibers {
            if !bases.insert(f.base.clone()) {
                return Err(GraphError::DuplicateBasePoint(f.base.clone()));
            }
            for e in &f.nodal_edges {
                if total.edge(e).is_none() {
                    return Err(GraphError::UnknownEdge(e.clone()));
                }
            }
        }
        Ok(GraphFamily { total, fibers })
    }

    /// Single-fiber family whose only fiber keeps every node.
    pub fn central(total: DualGraph) -> Result<Self, GraphError> {
        let fiber = Fiber {
            base: "b0".to_string(),
            nodal_edges: total.edges().iter().map(|e| e.id.clone()).collect(),
        };
        Self::new(total, vec![fiber])
    }

    pub fn total(&self) -> &DualGraph {
        &self.total
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn fiber(&self, base: &str) -> Result<&Fiber, GraphError> {
        self.fibers
            .iter()
            .find(|f| f.base == base)
            .ok_or_else(|| GraphError::UnknownBasePoint(base.to_string()))
    }

    /// A base point retaining every node of the total graph, if any.
    pub fn central_fiber(&self) -> Option<&Fiber> {
        self.fibers
            .iter()
            .find(|f| f.nodal_edges.len() == self.total.edges().len())
    }

    /// Dual graph of the fiber over `base`.
    pub fn fiber_graph(&self, base: &str) -> Result<DualGraph, GraphError> {
        let fiber = self.fiber(base)?;
        self.total.contract_all_except(&fiber.nodal_edges)
    }
}

/// Vertex, edge and mark-label permutations. Ids missing from a map are
/// fixed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphAutomorphism {
    #[serde(default)]
    pub vertices: BTreeMap<String, String>,
    #[serde(default)]
    pub edges: BTreeMap<String, String>,
    #[serde(default)]
    pub labels: BTreeMap<String, String>,
}

/// Total id maps induced by an automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relabeling {
    pub vertices: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl Relabeling {
    pub fn inverse(&self) -> Relabeling {
        Relabeling {
            vertices: self
                .vertices
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    /// `other` after `self`.
    pub fn then(&self, other: &Relabeling) -> Relabeling {
        Relabeling {
            vertices: self
                .vertices
                .iter()
                .map(|(a, b)| (a.clone(), other.vertices.get(b).unwrap_or(b).clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b)| (a.clone(), other.edges.get(b).unwrap_or(b).clone()))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().all(|(a, b)| a == b) && self.edges.iter().all(|(a, b)| a == b)
    }
}

impl GraphAutomorphism {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn vertex(&self, v: &str) -> String {
        self.vertices
            .get(v)
            .cloned()
            .unwrap_or_else(|| v.to_string())
    }

    pub fn edge(&self, e: &str) -> String {
        self.edges.get(e).cloned().unwrap_or_else(|| e.to_string())
    }

    pub fn label<'a>(&'a self, l: &'a str) -> &'a str {
        self.labels.get(l).map(String::as_str).unwrap_or(l)
    }

    /// Checks bijectivity and preservation of incidence, genus and marks;
    /// returns the total relabeling on success.
    pub fn validate(&self, g: &DualGraph) -> Result<Relabeling, GraphError> {
        let bad = |msg: String| Err(GraphError::InvalidAutomorphism(msg));
        for (a, b) in &self.vertices {
            if !g.has_vertex(a) || !g.has_vertex(b) {
                return bad(format!("vertex map {a} -> {b} leaves the graph"));
            }
        }
        for (a, b) in &self.edges {
            if g.edge(a).is_none() || g.edge(b).is_none() {
                return bad(format!("edge map {a} -> {b} leaves the graph"));
            }
        }
        let vertices: BTreeMap<String, String> = g
            .vertices
            .iter()
            .map(|v| (v.id.clone(), self.vertex(&v.id)))
            .collect();
        let edges: BTreeMap<String, String> = g
            .edges
            .iter()
            .map(|e| (e.id.clone(), self.edge(&e.id)))
            .collect();
        if vertices.values().collect::<BTreeSet<_>>().len() != vertices.len() {
            return bad("vertex map is not a bijection".into());
        }
        if edges.values().collect::<BTreeSet<_>>().len() != edges.len() {
            return bad("edge map is not a bijection".into());
        }
        for v in &g.vertices {
            let image = g.vertex(&vertices[&v.id]).unwrap();
            if image.genus != v.genus {
                return bad(format!(
                    "{} (genus {}) mapped to {} (genus {})",
                    v.id, v.genus, image.id, image.genus
                ));
            }
        }
        for e in &g.edges {
            let image = g.edge(&edges[&e.id]).unwrap();
            let want: BTreeSet<&String> = e.ends.iter().map(|x| &vertices[x]).collect();
            let have: BTreeSet<&String> = image.ends.iter().collect();
            if want != have {
                return bad(format!(
                    "edge {} mapped to {} breaks incidence",
                    e.id, image.id
                ));
            }
        }
        let labels: BTreeSet<&str> = g.marks.iter().map(|m| m.label.as_str()).collect();
        let images: BTreeSet<&str> = labels.iter().map(|l| self.label(l)).collect();
        if images != labels {
            return bad("label map is not a permutation of the mark labels".into());
        }
        let placed: BTreeSet<(&str, &str)> = g
            .marks
            .iter()
            .map(|m| (m.vertex.as_str(), m.label.as_str()))
            .collect();
        for m in &g.marks {
            let target = (vertices[&m.vertex].as_str(), self.label(&m.label));
            if !placed.contains(&target) {
                return bad(format!(
                    "mark {} on {} not carried to a mark",
                    m.label, m.vertex
                ));
            }
        }
        Ok(Relabeling { vertices, edges })
    }
}
