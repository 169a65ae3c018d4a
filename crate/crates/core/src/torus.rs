//! Mapping tori of finite-order graph automorphisms.
//!
//! The mapping torus of an automorphism `f` of a finite graph Λ is a GBS
//! group whose labelled graph is the quotient `Λ/⟨f⟩`: a vertex orbit of
//! period `p_v` and an incident edge orbit of period `p_e` give the label
//! `p_e / p_v` near that vertex.

use num_integer::Integer;

use crate::covering::Namer;
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, LabelledGraph, VertexId};
use crate::plateau::rank;

/// An automorphism of a finite graph: a vertex permutation and, for each edge,
/// the image of its side-0 dart. Labels of `graph` are not used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAutomorphism {
    pub graph: LabelledGraph,
    pub vertex_perm: Vec<VertexId>,
    pub dart_perm: Vec<Dart>,
    order: usize,
}

impl GraphAutomorphism {
    /// Checks that both maps are bijective and respect origins, and computes
    /// the order.
    pub fn new(graph: LabelledGraph, vertex_perm: Vec<VertexId>, dart_perm: Vec<Dart>) -> Result<Self> {
        let bad = |s: String| Error::InvalidAutomorphism(s);
        if vertex_perm.len() != graph.vertex_count() || dart_perm.len() != graph.edge_count() {
            return Err(bad("permutation sizes differ from the graph".into()));
        }
        let mut hit = vec![false; graph.vertex_count()];
        for &w in &vertex_perm {
            if !graph.contains_vertex(w) || std::mem::replace(&mut hit[w.0], true) {
                return Err(bad("vertex map is not a permutation".into()));
            }
        }
        let mut hit = vec![false; graph.edge_count()];
        for (e, &d) in graph.edges().zip(&dart_perm) {
            if !graph.contains_edge(d.edge) || d.side > 1 || std::mem::replace(&mut hit[d.edge.0], true) {
                return Err(bad(format!(
                    "edge map is not a permutation (at {})",
                    graph.edge_name(e)
                )));
            }
        }
        let mut a = GraphAutomorphism {
            graph,
            vertex_perm,
            dart_perm,
            order: 1,
        };
        for d in a.graph.darts() {
            let image = a.image(d);
            if a.graph.origin(image) != a.vertex_perm[a.graph.origin(d).0] {
                return Err(bad(format!(
                    "edge {} is not sent to an edge at the image of its origin",
                    a.graph.edge_name(d.edge)
                )));
            }
        }
        a.order = a.compute_order()?;
        Ok(a)
    }

    pub fn image(&self, d: Dart) -> Dart {
        let f = self.dart_perm[d.edge.0];
        if d.side == 0 {
            f
        } else {
            f.reverse()
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn compute_order(&self) -> Result<usize> {
        let mut order = 1usize;
        let mut fold = |len: usize| -> Result<()> {
            order = order
                .checked_mul(len / order.gcd(&len))
                .ok_or_else(|| Error::Overflow("automorphism order".into()))?;
            Ok(())
        };
        for c in self.vertex_orbits() {
            fold(c.len())?;
        }
        for c in self.dart_orbits() {
            fold(c.len())?;
        }
        Ok(order)
    }

    /// Vertex orbits, each in the order visited from its smallest member.
    pub fn vertex_orbits(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.graph.vertex_count()];
        let mut out = Vec::new();
        for v in self.graph.vertices() {
            if seen[v.0] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut w = v;
            while !seen[w.0] {
                seen[w.0] = true;
                orbit.push(w);
                w = self.vertex_perm[w.0];
            }
            out.push(orbit);
        }
        out
    }

    /// Dart orbits, each starting from its smallest dart.
    pub fn dart_orbits(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![[false; 2]; self.graph.edge_count()];
        let mut out = Vec::new();
        for d in self.graph.darts() {
            if seen[d.edge.0][d.side as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut c = d;
            while !seen[c.edge.0][c.side as usize] {
                seen[c.edge.0][c.side as usize] = true;
                orbit.push(c);
                c = self.image(c);
            }
            out.push(orbit);
        }
        out
    }

    /// Edges some power of the automorphism sends to their own reverse.
    pub fn inverted_edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .dart_orbits()
            .into_iter()
            .filter(|o| o.contains(&o[0].reverse()))
            .flat_map(|o| o.into_iter().map(|d| d.edge))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn inverse(&self) -> GraphAutomorphism {
        let g = &self.graph;
        let mut vertex_perm = vec![VertexId(0); g.vertex_count()];
        for v in g.vertices() {
            vertex_perm[self.vertex_perm[v.0].0] = v;
        }
        let mut dart_perm = vec![Dart::forward(EdgeId(0)); g.edge_count()];
        for e in g.edges() {
            let d = self.dart_perm[e.0];
            dart_perm[d.edge.0] = if d.side == 0 {
                Dart::forward(e)
            } else {
                Dart::new(e, 1)
            };
        }
        GraphAutomorphism {
            graph: g.clone(),
            vertex_perm,
            dart_perm,
            order: self.order,
        }
    }
}

/// The order of a valid automorphism (validation happens on construction).
pub fn verify_automorphism(a: &GraphAutomorphism) -> usize {
    a.order()
}

/// Subdivides every inverted edge `ε` at a new vertex `ε.mid`, replacing it by
/// the halves `ε.0` (from the origin) and `ε.1` (from the terminus), both
/// oriented towards the midpoint. The result has no inversions.
pub fn subdivide_inverted_edges(a: &GraphAutomorphism) -> GraphAutomorphism {
    let g = &a.graph;
    let inverted = a.inverted_edges();
    if inverted.is_empty() {
        return a.clone();
    }
    let is_inv = |e: EdgeId| inverted.binary_search(&e).is_ok();
    let mut vnames = Namer::default();
    let mut enames = Namer::default();
    for v in g.vertices() {
        vnames.fresh(g.vertex_name(v).to_string());
    }
    for e in g.edges().filter(|&e| !is_inv(e)) {
        enames.fresh(g.edge_name(e).to_string());
    }
    let mut h = LabelledGraph::new();
    for v in g.vertices() {
        h.add_vertex(g.vertex_name(v)).expect("unique");
    }
    let mut mid = vec![None; g.edge_count()];
    for &e in &inverted {
        let name = vnames.fresh(format!("{}.mid", g.edge_name(e)));
        mid[e.0] = Some(h.add_vertex(name).expect("fresh"));
    }
    // new edge ids: kept[e] for a kept edge, halves[e][s] for the half at end s
    let mut kept = vec![None; g.edge_count()];
    let mut halves = vec![None; g.edge_count()];
    for e in g.edges() {
        let [a0, a1] = g.endpoints(e);
        let [l0, l1] = g.labels(e).clone();
        if let Some(m) = mid[e.0] {
            let h0 = h
                .add_edge(enames.fresh(format!("{}.0", g.edge_name(e))), a0, m, l0, 1)
                .expect("fresh");
            let h1 = h
                .add_edge(enames.fresh(format!("{}.1", g.edge_name(e))), a1, m, l1, 1)
                .expect("fresh");
            halves[e.0] = Some([h0, h1]);
        } else {
            kept[e.0] = Some(
                h.add_edge(g.edge_name(e), a0, a1, l0, l1)
                    .expect("unique"),
            );
        }
    }
    let mut vertex_perm: Vec<VertexId> = a.vertex_perm.clone();
    for &e in &inverted {
        vertex_perm.push(mid[a.dart_perm[e.0].edge.0].expect("orbit is inverted"));
    }
    let mut dart_perm = vec![Dart::forward(EdgeId(0)); h.edge_count()];
    for e in g.edges() {
        if let Some(k) = kept[e.0] {
            let img = a.dart_perm[e.0];
            let target = kept[img.edge.0].expect("orbit is not inverted");
            dart_perm[k.0] = Dart::new(target, img.side);
        } else {
            let [h0, h1] = halves[e.0].expect("inverted");
            for (side, half) in [(0u8, h0), (1u8, h1)] {
                let img = a.image(Dart::new(e, side));
                let t = halves[img.edge.0].expect("orbit is inverted")[img.side as usize];
                dart_perm[half.0] = Dart::forward(t);
            }
        }
    }
    GraphAutomorphism::new(h, vertex_perm, dart_perm).expect("subdivision is an automorphism")
}

/// The labelled graph `Λ/⟨f⟩` of the mapping torus.
///
/// Each orbit is named after its member with the smallest identifier, and a
/// quotient edge is oriented like that member. All labels are positive.
pub fn mapping_torus_graph(a: &GraphAutomorphism) -> Result<LabelledGraph> {
    let g = &a.graph;
    if let Some(&e) = a.inverted_edges().first() {
        return Err(Error::Inversion(g.edge_name(e).to_string()));
    }
    let vorbits = a.vertex_orbits();
    let mut vclass = vec![0; g.vertex_count()];
    let mut q = LabelledGraph::new();
    for (i, orbit) in vorbits.iter().enumerate() {
        for v in orbit {
            vclass[v.0] = i;
        }
        let rep = orbit.iter().min_by_key(|v| g.vertex_name(**v)).expect("nonempty");
        q.add_vertex(g.vertex_name(*rep)).expect("unique");
    }
    let mut eorbits: Vec<Vec<EdgeId>> = a
        .dart_orbits()
        .into_iter()
        .map(|o| {
            let mut es: Vec<EdgeId> = o.iter().map(|d| d.edge).collect();
            es.sort();
            es
        })
        .collect();
    eorbits.sort();
    eorbits.dedup();
    for orbit in eorbits {
        let rep = *orbit.iter().min_by_key(|e| g.edge_name(**e)).expect("nonempty");
        let pe = orbit.len();
        let ends = g.endpoints(rep);
        let mut labels = [0usize; 2];
        for (s, end) in ends.iter().enumerate() {
            let pv = vorbits[vclass[end.0]].len();
            if pe % pv != 0 {
                return Err(Error::Invariant(format!(
                    "vertex period {pv} does not divide edge period {pe} at {}",
                    g.edge_name(rep)
                )));
            }
            labels[s] = pe / pv;
        }
        q.add_edge(
            g.edge_name(rep),
            VertexId(vclass[ends[0].0]),
            VertexId(vclass[ends[1].0]),
            labels[0],
            labels[1],
        )?;
    }
    Ok(q)
}

/// Rank of the mapping torus, after subdividing inverted edges.
pub fn mapping_torus_rank(a: &GraphAutomorphism) -> Result<usize> {
    rank(&mapping_torus_graph(&subdivide_inverted_edges(a))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> LabelledGraph {
        let mut g = LabelledGraph::new();
        for v in vertices {
            g.add_vertex(*v).unwrap();
        }
        for (e, o, t) in edges {
            g.add_edge_between(*e, o, t, 1, 1).unwrap();
        }
        g
    }

    /// Theta graph with the order-6 symmetry a ↦ b̃, b ↦ c̃, c ↦ ã, P ↔ Q.
    fn theta() -> GraphAutomorphism {
        let g = graph(&["P", "Q"], &[("a", "P", "Q"), ("b", "P", "Q"), ("c", "P", "Q")]);
        GraphAutomorphism::new(
            g,
            vec![VertexId(1), VertexId(0)],
            vec![
                Dart::new(EdgeId(1), 1),
                Dart::new(EdgeId(2), 1),
                Dart::new(EdgeId(0), 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(verify_automorphism(&theta()), 6);
        let g = graph(&["A", "B"], &[("x", "A", "B"), ("y", "B", "A")]);
        let rot = GraphAutomorphism::new(
            g.clone(),
            vec![VertexId(1), VertexId(0)],
            vec![Dart::forward(EdgeId(1)), Dart::forward(EdgeId(0))],
        )
        .unwrap();
        assert_eq!(rot.order(), 2);
        let id = GraphAutomorphism::new(
            g,
            vec![VertexId(0), VertexId(1)],
            vec![Dart::forward(EdgeId(0)), Dart::forward(EdgeId(1))],
        )
        .unwrap();
        assert_eq!(id.order(), 1);
        assert_eq!(mapping_torus_rank(&rot).unwrap(), 2);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let g = graph(&["A", "B"], &[("x", "A", "B")]);
        let r = GraphAutomorphism::new(g.clone(), vec![VertexId(1), VertexId(0)], vec![Dart::forward(EdgeId(0))]);
        assert!(matches!(r, Err(Error::InvalidAutomorphism(_))));
        let r = GraphAutomorphism::new(g, vec![VertexId(0), VertexId(0)], vec![Dart::forward(EdgeId(0))]);
        assert!(matches!(r, Err(Error::InvalidAutomorphism(_))));
    }

    #[test]
    fn theta_quotient() {
        let a = theta();
        assert_eq!(a.inverted_edges().len(), 3);
        let s = subdivide_inverted_edges(&a);
        assert!(s.inverted_edges().is_empty());
        let mut vsizes: Vec<usize> = s.vertex_orbits().iter().map(Vec::len).collect();
        vsizes.sort();
        assert_eq!(vsizes, vec![2, 3]);
        assert_eq!(s.dart_orbits().len(), 2); // one edge orbit, two dart orbits
        let q = mapping_torus_graph(&s).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (2, 1));
        assert_eq!(q.vertex_name(VertexId(0)), "P");
        assert_eq!(q.edge_name(EdgeId(0)), "a.0");
        assert!(q.has_nontrivial_center().unwrap());
        assert_eq!(q.labels(EdgeId(0)), &[BigInt::from(3), BigInt::from(2)]);
        assert!(mapping_torus_graph(&a).is_err());
        assert_eq!(mapping_torus_rank(&a).unwrap(), 2);
    }

    #[test]
    fn single_inverted_edge() {
        let g = graph(&["A", "B"], &[("e", "A", "B")]);
        let a = GraphAutomorphism::new(g, vec![VertexId(1), VertexId(0)], vec![Dart::new(EdgeId(0), 1)]).unwrap();
        let s = subdivide_inverted_edges(&a);
        assert_eq!((s.graph.vertex_count(), s.graph.edge_count()), (3, 2));
        assert_eq!(s.dart_perm, vec![Dart::forward(EdgeId(1)), Dart::forward(EdgeId(0))]);
    }

    #[test]
    fn identity_on_rose() {
        for r in 1..4 {
            let mut g = LabelledGraph::new();
            g.add_vertex("v").unwrap();
            for i in 0..r {
                g.add_edge(format!("l{i}"), VertexId(0), VertexId(0), 1, 1).unwrap();
            }
            let id = GraphAutomorphism::new(g.clone(), vec![VertexId(0)], g.edges().map(Dart::forward).collect()).unwrap();
            let q = mapping_torus_graph(&id).unwrap();
            assert_eq!(q, g);
            assert_eq!(mapping_torus_rank(&id).unwrap(), r + 1);
        }
    }

    #[test]
    fn inverse_gives_isomorphic_quotient() {
        let a = theta();
        let q1 = mapping_torus_graph(&subdivide_inverted_edges(&a)).unwrap();
        let q2 = mapping_torus_graph(&subdivide_inverted_edges(&a.inverse())).unwrap();
        assert!(crate::graph::isomorphism(&q1, &q2).is_some());
        assert_eq!(a.inverse().inverse(), a);
    }
}
