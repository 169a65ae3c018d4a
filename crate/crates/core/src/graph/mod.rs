//! Labelled graphs: finite multigraphs carrying a nonzero integer at every
//! edge-end.
//!
//! Every non-oriented edge is stored once, with a declared orientation. Its two
//! oriented versions are [`Dart`]s: side 0 runs from the declared origin to the
//! declared terminus, side 1 is the reverse. Reversal is therefore an
//! involution by construction, and the label of each dart is stored
//! independently.
//!
//! Vertices and edges carry opaque string identifiers; all iteration follows
//! declaration order.

mod iso;
mod ops;

pub use iso::{isomorphism, stable_refinement, GraphIsomorphism};
pub use ops::{CycleBasisModulus, ModulusEntry};

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Edge label. Labels are unbounded so that products and reductions stay exact.
pub type Label = BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// An oriented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub side: u8,
}

impl Dart {
    pub fn new(edge: EdgeId, side: u8) -> Self {
        debug_assert!(side < 2);
        Dart { edge, side }
    }

    pub fn forward(edge: EdgeId) -> Self {
        Dart { edge, side: 0 }
    }

    pub fn reverse(self) -> Self {
        Dart {
            edge: self.edge,
            side: 1 - self.side,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v#{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Edge {
    name: String,
    ends: [VertexId; 2],
    labels: [Label; 2],
}

#[derive(Clone, Debug, Default)]
pub struct LabelledGraph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    incidence: Vec<Vec<Dart>>,
}

/// Two graphs are equal when they declare the same identifiers in the same
/// order with the same incidences and labels.
impl PartialEq for LabelledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names && self.edges == other.edges
    }
}

impl Eq for LabelledGraph {}

impl LabelledGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = VertexId(self.vertex_names.len());
        self.vertex_index.insert(name.clone(), id);
        self.vertex_names.push(name);
        self.incidence.push(Vec::new());
        Ok(id)
    }

    /// Adds an edge from `origin` to `terminus` with the given labels near
    /// each end. Loops are allowed (`origin == terminus`).
    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        origin: VertexId,
        terminus: VertexId,
        label_at_origin: impl Into<Label>,
        label_at_terminus: impl Into<Label>,
    ) -> Result<EdgeId> {
        let name = name.into();
        if self.edge_index.contains_key(&name) {
            return Err(Error::DuplicateEdge(name));
        }
        for v in [origin, terminus] {
            if v.0 >= self.vertex_names.len() {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        let labels = [label_at_origin.into(), label_at_terminus.into()];
        if labels.iter().any(Zero::is_zero) {
            return Err(Error::ZeroLabel(name));
        }
        let id = EdgeId(self.edges.len());
        self.edge_index.insert(name.clone(), id);
        self.edges.push(Edge {
            name,
            ends: [origin, terminus],
            labels,
        });
        self.incidence[origin.0].push(Dart::new(id, 0));
        self.incidence[terminus.0].push(Dart::new(id, 1));
        Ok(id)
    }

    /// Name-based variant of [`add_edge`](Self::add_edge).
    pub fn add_edge_between(
        &mut self,
        name: impl Into<String>,
        origin: &str,
        terminus: &str,
        label_at_origin: impl Into<Label>,
        label_at_terminus: impl Into<Label>,
    ) -> Result<EdgeId> {
        let o = self.require_vertex(origin)?;
        let t = self.require_vertex(terminus)?;
        self.add_edge(name, o, t, label_at_origin, label_at_terminus)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + Clone {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> + Clone {
        (0..self.edges.len()).map(EdgeId)
    }

    /// All darts, ordered by edge and then side.
    pub fn darts(&self) -> impl Iterator<Item = Dart> + Clone {
        self.edges()
            .flat_map(|e| [Dart::new(e, 0), Dart::new(e, 1)])
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_id(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn require_edge(&self, name: &str) -> Result<EdgeId> {
        self.edge_id(name)
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.0 < self.vertex_names.len()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.0 < self.edges.len()
    }

    pub fn origin(&self, d: Dart) -> VertexId {
        self.edges[d.edge.0].ends[d.side as usize]
    }

    pub fn terminus(&self, d: Dart) -> VertexId {
        self.origin(d.reverse())
    }

    /// Label of `d` near its origin.
    pub fn label(&self, d: Dart) -> &Label {
        &self.edges[d.edge.0].labels[d.side as usize]
    }

    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e.0].ends
    }

    pub fn labels(&self, e: EdgeId) -> &[Label; 2] {
        &self.edges[e.0].labels
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let [a, b] = self.edges[e.0].ends;
        a == b
    }

    /// The darts with origin `v` (the set E_v), ordered by edge then side.
    pub fn darts_at(&self, v: VertexId) -> &[Dart] {
        &self.incidence[v.0]
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.incidence[v.0].len()
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.valence(v) == 1
    }

    pub fn terminal_count(&self) -> usize {
        self.vertices().filter(|&v| self.is_terminal(v)).count()
    }

    pub(crate) fn set_label(&mut self, d: Dart, label: Label) {
        debug_assert!(!label.is_zero());
        self.edges[d.edge.0].labels[d.side as usize] = label;
    }

    /// Component index of every vertex; components are numbered in order of
    /// their smallest vertex.
    pub fn component_map(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &d in &self.incidence[v] {
                    let w = self.terminus(d).0;
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let (comp, count) = self.component_map();
        let mut out = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            out[c].push(VertexId(v));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.component_map().1 == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.vertex_count() == 0 {
            Err(Error::EmptyGraph)
        } else if !self.is_connected() {
            Err(Error::Disconnected)
        } else {
            Ok(())
        }
    }

    /// The subgraph spanned by `keep` (all edges with both ends kept), with
    /// identifiers preserved. Returns the new graph and, for each new vertex
    /// and edge, the old identifier.
    pub fn induced(&self, keep: &[VertexId]) -> (LabelledGraph, Vec<VertexId>, Vec<EdgeId>) {
        let mut new_index = vec![None; self.vertex_count()];
        let mut sorted = keep.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut g = LabelledGraph::new();
        for &v in &sorted {
            let id = g
                .add_vertex(self.vertex_name(v))
                .expect("identifiers are unique in the parent graph");
            new_index[v.0] = Some(id);
        }
        let mut edge_origin = Vec::new();
        for e in self.edges() {
            let [a, b] = self.endpoints(e);
            if let (Some(na), Some(nb)) = (new_index[a.0], new_index[b.0]) {
                let [la, lb] = self.labels(e).clone();
                g.add_edge(self.edge_name(e), na, nb, la, lb)
                    .expect("identifiers are unique in the parent graph");
                edge_origin.push(e);
            }
        }
        (g, sorted, edge_origin)
    }
}
