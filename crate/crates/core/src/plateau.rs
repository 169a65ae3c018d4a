//! Plateaux, the plateaunic number μ and the rank β + μ.

use std::collections::BTreeSet;

use crate::arith::{divides, is_prime, prime_factors};
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, LabelledGraph, VertexId};
use crate::hitting_set;

/// A p-plateau: a connected subgraph such that a label at an origin inside
/// it is divisible by `p` exactly when its edge is not contained in it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Plateau {
    pub prime: u64,
    /// Sorted.
    pub vertices: Vec<VertexId>,
    /// Sorted.
    pub edges: Vec<EdgeId>,
    pub is_whole_graph: bool,
}

impl Plateau {
    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole_graph
    }

    /// Whether the plateau has no terminal vertex of `g` and is not the whole
    /// graph.
    pub fn is_interior(&self, g: &LabelledGraph) -> bool {
        self.is_proper() && self.vertices.iter().all(|&v| !g.is_terminal(v))
    }

    /// Darts with origin in the plateau whose edge is not contained in it.
    ///
    /// This includes edges leaving the plateau and edges with both ends in
    /// it that it does not contain.
    pub fn boundary(&self, g: &LabelledGraph) -> Vec<Dart> {
        self.vertices
            .iter()
            .flat_map(|&v| g.darts_at(v).iter().copied())
            .filter(|d| !self.contains_edge(d.edge))
            .collect()
    }

    /// Origins of the boundary darts, sorted.
    pub fn frontier(&self, g: &LabelledGraph) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.boundary(g).iter().map(|&d| g.origin(d)).collect();
        out.dedup();
        out
    }

    /// Builds a plateau from explicit data, checking every defining condition
    /// against `g`.
    pub fn checked(
        g: &LabelledGraph,
        prime: u64,
        vertices: Vec<VertexId>,
        edges: Vec<EdgeId>,
    ) -> Result<Plateau> {
        let mut vertices = vertices;
        let mut edges = edges;
        vertices.sort();
        vertices.dedup();
        edges.sort();
        edges.dedup();
        let p = Plateau {
            prime,
            is_whole_graph: vertices.len() == g.vertex_count() && edges.len() == g.edge_count(),
            vertices,
            edges,
        };
        p.verify(g)?;
        Ok(p)
    }

    /// Re-checks primality, containment, connectivity and the divisibility
    /// dichotomy.
    pub fn verify(&self, g: &LabelledGraph) -> Result<()> {
        let bad = |why: String| Err(Error::NotAPlateau(why));
        if !is_prime(self.prime) {
            return Err(Error::NotPrime(self.prime));
        }
        if self.vertices.is_empty() {
            return bad("empty vertex set".into());
        }
        if let Some(v) = self.vertices.iter().find(|v| !g.contains_vertex(**v)) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        for &e in &self.edges {
            if !g.contains_edge(e) {
                return Err(Error::UnknownEdge(e.to_string()));
            }
            if !g.endpoints(e).iter().all(|&v| self.contains_vertex(v)) {
                return bad(format!("edge {} leaves the vertex set", g.edge_name(e)));
            }
        }
        let whole = self.vertices.len() == g.vertex_count() && self.edges.len() == g.edge_count();
        if self.is_whole_graph != whole {
            return bad("whole-graph flag is inconsistent".into());
        }
        let (sub, _, _) = self.subgraph(g);
        if !sub.is_connected() {
            return bad("not connected".into());
        }
        for &v in &self.vertices {
            for &d in g.darts_at(v) {
                let divisible = divides(self.prime, g.label(d));
                if divisible == self.contains_edge(d.edge) {
                    return bad(format!(
                        "label {} of edge {} near {} breaks the dichotomy for p={}",
                        g.label(d),
                        g.edge_name(d.edge),
                        g.vertex_name(v),
                        self.prime
                    ));
                }
            }
        }
        Ok(())
    }

    /// The plateau as a standalone graph (identifiers kept).
    pub fn subgraph(&self, g: &LabelledGraph) -> (LabelledGraph, Vec<VertexId>, Vec<EdgeId>) {
        let mut sub = LabelledGraph::new();
        let mut index = vec![None; g.vertex_count()];
        for &v in &self.vertices {
            index[v.0] = Some(sub.add_vertex(g.vertex_name(v)).expect("unique"));
        }
        for &e in &self.edges {
            let [a, b] = g.endpoints(e);
            let [la, lb] = g.labels(e).clone();
            sub.add_edge(g.edge_name(e), index[a.0].unwrap(), index[b.0].unwrap(), la, lb)
                .expect("unique");
        }
        (sub, self.vertices.clone(), self.edges.clone())
    }

    /// One-line report: `p=<prime> vertices=<list> edges=<list>`.
    pub fn describe(&self, g: &LabelledGraph) -> String {
        let vs: Vec<&str> = self.vertices.iter().map(|&v| g.vertex_name(v)).collect();
        let es: Vec<&str> = self.edges.iter().map(|&e| g.edge_name(e)).collect();
        format!(
            "p={} vertices={} edges={}",
            self.prime,
            vs.join(","),
            es.join(",")
        )
    }
}

/// Proper plateaux of `g` for every prime dividing some label. The whole graph,
/// a plateau for every other prime, is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlateauCollection {
    /// Ordered by prime, then by smallest vertex.
    pub proper_plateaux: Vec<Plateau>,
}

impl PlateauCollection {
    pub fn whole_graph_is_plateau(&self) -> bool {
        true
    }
}

/// Every p-plateau of `g` except the whole graph, in order of smallest vertex.
///
/// Components of the subgraph made of the edges whose two labels are prime to
/// `p` are the only candidates; a component qualifies when every other edge
/// leaving one of its vertices carries a multiple of `p` there.
pub fn plateaux_for_prime(g: &LabelledGraph, p: u64) -> Result<Vec<Plateau>> {
    Ok(all_p_plateaux(g, p)?
        .into_iter()
        .filter(Plateau::is_proper)
        .collect())
}

/// Like [`plateaux_for_prime`] but keeps the whole graph when it qualifies.
pub fn all_p_plateaux(g: &LabelledGraph, p: u64) -> Result<Vec<Plateau>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let coprime: Vec<bool> = g
        .edges()
        .map(|e| g.labels(e).iter().all(|l| !divides(p, l)))
        .collect();
    let mut comp = vec![usize::MAX; g.vertex_count()];
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    for start in g.vertices() {
        if comp[start.0] != usize::MAX {
            continue;
        }
        let id = groups.len();
        comp[start.0] = id;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &d in g.darts_at(v) {
                let w = g.terminus(d);
                if coprime[d.edge.0] && comp[w.0] == usize::MAX {
                    comp[w.0] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort();
        groups.push(members);
    }
    let mut group_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); groups.len()];
    for e in g.edges().filter(|e| coprime[e.0]) {
        group_edges[comp[g.endpoints(e)[0].0]].push(e);
    }
    let mut out = Vec::new();
    for (members, edges) in groups.into_iter().zip(group_edges) {
        let qualifies = members.iter().all(|&v| {
            g.darts_at(v)
                .iter()
                .all(|&d| coprime[d.edge.0] || divides(p, g.label(d)))
        });
        if !qualifies {
            continue;
        }
        out.push(Plateau {
            prime: p,
            is_whole_graph: members.len() == g.vertex_count() && edges.len() == g.edge_count(),
            vertices: members,
            edges,
        });
    }
    Ok(out)
}

/// Distinct primes dividing at least one label, increasing.
pub fn label_primes(g: &LabelledGraph) -> Vec<u64> {
    let mut primes = BTreeSet::new();
    for d in g.darts() {
        primes.extend(prime_factors(g.label(d)));
    }
    primes.into_iter().collect()
}

pub fn all_plateaux(g: &LabelledGraph) -> PlateauCollection {
    let mut proper_plateaux = Vec::new();
    for p in label_primes(g) {
        proper_plateaux.extend(plateaux_for_prime(g, p).expect("p is prime"));
    }
    PlateauCollection { proper_plateaux }
}

pub fn has_proper_plateau(g: &LabelledGraph) -> bool {
    label_primes(g)
        .into_iter()
        .any(|p| !plateaux_for_prime(g, p).expect("p is prime").is_empty())
}

/// The sets a generating vertex set must meet: every proper plateau and the
/// whole vertex set.
fn constraint_sets(g: &LabelledGraph) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = all_plateaux(g)
        .proper_plateaux
        .iter()
        .map(|p| p.vertices.iter().map(|v| v.0).collect())
        .collect();
    sets.push((0..g.vertex_count()).collect());
    sets
}

/// Minimal number of vertices meeting every plateau.
pub fn mu(g: &LabelledGraph) -> Result<usize> {
    g.require_connected()?;
    Ok(hitting_set::minimum_size(g.vertex_count(), &constraint_sets(g)))
}

/// Rank of the group: β + μ.
pub fn rank(g: &LabelledGraph) -> Result<usize> {
    Ok(g.betti() + mu(g)?)
}

/// Whether the vertex generators over `keep`, together with all stable
/// letters, generate the group: `keep` must meet every plateau.
pub fn generates(g: &LabelledGraph, keep: &[VertexId]) -> Result<bool> {
    g.require_connected()?;
    if let Some(v) = keep.iter().find(|v| !g.contains_vertex(**v)) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let mut inside = vec![false; g.vertex_count()];
    for v in keep {
        inside[v.0] = true;
    }
    Ok(constraint_sets(g)
        .iter()
        .all(|s| s.iter().any(|&v| inside[v])))
}

/// A minimum vertex set meeting every plateau; the lexicographically smallest
/// one in declaration order.
pub fn minimum_generating_vertices(g: &LabelledGraph) -> Result<Vec<VertexId>> {
    g.require_connected()?;
    Ok(hitting_set::minimum_set(g.vertex_count(), &constraint_sets(g))
        .into_iter()
        .map(VertexId)
        .collect())
}

/// The p-plateau containing `v`, if any (possibly the whole graph).
pub fn plateau_containing(g: &LabelledGraph, p: u64, v: VertexId) -> Result<Option<Plateau>> {
    if !g.contains_vertex(v) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    Ok(all_p_plateaux(g, p)?
        .into_iter()
        .find(|pl| pl.contains_vertex(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn names(g: &LabelledGraph, p: &Plateau) -> (u64, Vec<String>, Vec<String>) {
        (
            p.prime,
            p.vertices.iter().map(|&v| g.vertex_name(v).to_string()).collect(),
            p.edges.iter().map(|&e| g.edge_name(e).to_string()).collect(),
        )
    }

    #[test]
    fn two_plateaux_depend_on_parity() {
        let g = path_abc(7);
        let ps = plateaux_for_prime(&g, 2).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(names(&g, &ps[0]).1, ["v_b", "v_c"]);
        assert_eq!(names(&g, &ps[0]).2, ["e_2"]);
        let g = path_abc(6);
        let ps = plateaux_for_prime(&g, 2).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(names(&g, &ps[0]).1, ["v_b"]);
        assert!(ps[0].edges.is_empty());
    }

    #[test]
    fn whole_graph_is_not_listed() {
        assert!(plateaux_for_prime(&bs(2, 3), 5).unwrap().is_empty());
        let all = all_p_plateaux(&bs(2, 3), 5).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_whole_graph);
        assert_eq!(plateaux_for_prime(&bs(2, 3), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn triangle_has_one_plateau_per_edge() {
        let g = triangle_abc();
        let got: Vec<_> = all_plateaux(&g)
            .proper_plateaux
            .iter()
            .map(|p| names(&g, p))
            .collect();
        let expect = |p: u64, v: &[&str], e: &str| {
            (p, v.iter().map(|s| s.to_string()).collect::<Vec<_>>(), vec![e.to_string()])
        };
        assert_eq!(
            got,
            vec![
                expect(2, &["v_a", "v_b"], "e_1"),
                expect(3, &["v_a", "v_c"], "e_3"),
                expect(5, &["v_b", "v_c"], "e_2"),
            ]
        );
    }

    #[test]
    fn plateau_counts() {
        assert!(has_proper_plateau(&bs(2, 4)));
        assert!(!has_proper_plateau(&bs(2, 3)));
        assert!(!has_proper_plateau(&lollipop_cover()));
        assert_eq!(mu(&triangle_abc()).unwrap(), 2);
        assert_eq!(mu(&path_abc(6)).unwrap(), 3);
        for (m, n) in [(1, 1), (2, 3), (4, 6), (-3, 9)] {
            assert_eq!(mu(&bs(m, n)).unwrap(), 1);
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&path_abc(7)).unwrap(), 2);
        assert_eq!(rank(&path_abc(6)).unwrap(), 3);
        assert_eq!(rank(&path_abcd()).unwrap(), 3);
        assert_eq!(rank(&triangle_abc()).unwrap(), 3);
    }

    #[test]
    fn generating_sets() {
        let ids = |g: &LabelledGraph, vs: &[&str]| -> Vec<VertexId> {
            vs.iter().map(|v| g.vertex_id(v).unwrap()).collect()
        };
        let g = path_abc(7);
        assert!(generates(&g, &ids(&g, &["v_a", "v_c"])).unwrap());
        assert!(!generates(&g, &[]).unwrap());
        assert_eq!(minimum_generating_vertices(&g).unwrap(), ids(&g, &["v_a", "v_c"]));
        let g = path_abcd();
        assert!(generates(&g, &ids(&g, &["v_a", "v_b", "v_d"])).unwrap());
        assert!(!generates(&g, &ids(&g, &["v_a", "v_d"])).unwrap());
        let g = triangle_abc();
        assert_eq!(minimum_generating_vertices(&g).unwrap(), ids(&g, &["v_a", "v_b"]));
        assert_eq!(minimum_generating_vertices(&bs(2, 3)).unwrap(), vec![VertexId(0)]);
        assert!(generates(&g, &[VertexId(7)]).is_err());
    }

    #[test]
    fn checked_plateau_rejects_non_plateaux() {
        let g = path_abc(7);
        let vb = g.vertex_id("v_b").unwrap();
        assert!(Plateau::checked(&g, 2, vec![vb], vec![]).is_err());
        assert!(Plateau::checked(&g, 3, vec![VertexId(0)], vec![]).is_ok());
    }
}
