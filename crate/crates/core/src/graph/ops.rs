//! Elementary invariants and transformations of labelled graphs.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{Dart, EdgeId, Label, LabelledGraph, VertexId};
use crate::error::{Error, Result};

/// One generator of the cycle space together with its modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusEntry {
    /// Closed dart path, starting with the non-tree edge that defines it.
    pub cycle: Vec<Dart>,
    pub value: BigRational,
}

/// The modular homomorphism evaluated on the fundamental cycles of the
/// spanning tree returned by [`LabelledGraph::maximal_subtree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasisModulus {
    pub entries: Vec<ModulusEntry>,
}

impl CycleBasisModulus {
    pub fn is_unimodular(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.value.is_integer() && e.value.numer().magnitude().is_one())
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|e| e.value.is_one())
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|e| e.value.is_positive())
    }
}

/// Spanning-forest data rooted at the smallest vertex of each component.
struct RootedTree {
    in_tree: Vec<bool>,
    /// Dart from the parent into each vertex (`None` at roots).
    parent: Vec<Option<Dart>>,
    depth: Vec<usize>,
    /// Vertices in breadth-first order.
    order: Vec<VertexId>,
}

impl LabelledGraph {
    /// First Betti number: |E| − |V| + number of components.
    pub fn betti(&self) -> usize {
        let (_, c) = self.component_map();
        self.edge_count() + c - self.vertex_count()
    }

    /// A spanning tree built by scanning edges in declaration order and
    /// keeping every edge that joins two new components.
    pub fn maximal_subtree(&self) -> Result<Vec<EdgeId>> {
        self.require_connected()?;
        Ok(self.spanning_forest())
    }

    fn spanning_forest(&self) -> Vec<EdgeId> {
        let mut parent: Vec<usize> = (0..self.vertex_count()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut out = Vec::new();
        for e in self.edges() {
            let [a, b] = self.endpoints(e);
            let (ra, rb) = (find(&mut parent, a.0), find(&mut parent, b.0));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
                out.push(e);
            }
        }
        out
    }

    fn rooted_tree(&self) -> RootedTree {
        let n = self.vertex_count();
        let mut in_tree = vec![false; self.edge_count()];
        for e in self.spanning_forest() {
            in_tree[e.0] = true;
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in self.vertices() {
            if seen[root.0] {
                continue;
            }
            seen[root.0] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &d in self.darts_at(v) {
                    if !in_tree[d.edge.0] {
                        continue;
                    }
                    let w = self.terminus(d);
                    if !seen[w.0] {
                        seen[w.0] = true;
                        parent[w.0] = Some(d);
                        depth[w.0] = depth[v.0] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        RootedTree {
            in_tree,
            parent,
            depth,
            order,
        }
    }

    /// Collapses non-loop edges carrying a label ±1 until none is left.
    ///
    /// Edges are examined in declaration order; the end carrying ±1 is
    /// absorbed into the other end `w`, and every other label near the absorbed
    /// vertex is multiplied by `±λ` where `λ` is the label near `w`
    /// (substituting `a_u = a_w^{±λ}`).
    pub fn reduce(&self) -> Result<LabelledGraph> {
        self.require_connected()?;
        let mut g = self.clone();
        while let Some(d) = g.first_collapsible() {
            g = g.collapse(d);
        }
        Ok(g)
    }

    pub fn is_reduced(&self) -> bool {
        self.first_collapsible().is_none()
    }

    fn first_collapsible(&self) -> Option<Dart> {
        self.darts()
            .find(|&d| !self.is_loop(d.edge) && self.label(d).magnitude().is_one())
    }

    /// Removes the edge of `d`, merging `origin(d)` (which carries ±1) into
    /// `terminus(d)`.
    fn collapse(&self, d: Dart) -> LabelledGraph {
        let u = self.origin(d);
        let w = self.terminus(d);
        let factor: Label = self.label(d) * self.label(d.reverse());
        let mut g = LabelledGraph::new();
        let mut new_id = vec![VertexId(usize::MAX); self.vertex_count()];
        for v in self.vertices() {
            if v != u {
                new_id[v.0] = g.add_vertex(self.vertex_name(v)).expect("unique names");
            }
        }
        new_id[u.0] = new_id[w.0];
        for e in self.edges() {
            if e == d.edge {
                continue;
            }
            let ends = self.endpoints(e);
            let labels: Vec<Label> = (0..2)
                .map(|s| {
                    let l = self.labels(e)[s].clone();
                    if ends[s] == u {
                        l * &factor
                    } else {
                        l
                    }
                })
                .collect();
            let [l0, l1]: [Label; 2] = labels.try_into().expect("two labels");
            g.add_edge(self.edge_name(e), new_id[ends[0].0], new_id[ends[1].0], l0, l1)
                .expect("unique names");
        }
        g
    }

    /// Negates every label near `v` (both ends of a loop at `v`).
    pub fn sign_change_vertex(&self, v: VertexId) -> Result<LabelledGraph> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let mut g = self.clone();
        for &d in self.darts_at(v) {
            g.set_label(d, -self.label(d));
        }
        Ok(g)
    }

    /// Negates both labels carried by `e`.
    pub fn sign_change_edge(&self, e: EdgeId) -> Result<LabelledGraph> {
        if !self.contains_edge(e) {
            return Err(Error::UnknownEdge(e.to_string()));
        }
        let mut g = self.clone();
        for d in [Dart::new(e, 0), Dart::new(e, 1)] {
            g.set_label(d, -self.label(d));
        }
        Ok(g)
    }

    /// Admissible sign changes making every spanning-tree label positive and
    /// leaving at most one negative label on each remaining edge. When the
    /// modulus is positive, all labels end up positive.
    pub fn normalize_signs(&self) -> Result<LabelledGraph> {
        self.require_connected()?;
        let tree = self.rooted_tree();
        let mut g = self.clone();
        for &v in &tree.order {
            let Some(d) = tree.parent[v.0] else { continue };
            if g.label(d).is_negative() {
                g = g.sign_change_edge(d.edge)?;
            }
            if g.label(d.reverse()).is_negative() {
                g = g.sign_change_vertex(v)?;
            }
        }
        for e in self.edges() {
            if tree.in_tree[e.0] {
                continue;
            }
            let [a, b] = g.labels(e);
            if a.is_negative() && b.is_negative() {
                g = g.sign_change_edge(e)?;
            }
        }
        Ok(g)
    }

    /// Modulus of each fundamental cycle of [`maximal_subtree`](Self::maximal_subtree),
    /// one entry per non-tree edge in declaration order.
    pub fn modulus(&self) -> Result<CycleBasisModulus> {
        self.require_connected()?;
        let tree = self.rooted_tree();
        let mut entries = Vec::new();
        for e in self.edges() {
            if tree.in_tree[e.0] {
                continue;
            }
            let d = Dart::new(e, 0);
            let mut cycle = vec![d];
            cycle.extend(self.tree_path(&tree, self.terminus(d), self.origin(d)));
            let value = cycle.iter().fold(BigRational::one(), |acc, &c| {
                acc * BigRational::new(self.label(c).clone(), self.label(c.reverse()).clone())
            });
            entries.push(ModulusEntry { cycle, value });
        }
        Ok(CycleBasisModulus { entries })
    }

    /// Dart path in the tree from `from` to `to`.
    fn tree_path(&self, tree: &RootedTree, from: VertexId, to: VertexId) -> Vec<Dart> {
        let (mut a, mut b) = (from, to);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if tree.depth[a.0] >= tree.depth[b.0] {
                let d = tree.parent[a.0].expect("non-root");
                up.push(d.reverse());
                a = self.origin(d);
            } else {
                let d = tree.parent[b.0].expect("non-root");
                down.push(d);
                b = self.origin(d);
            }
        }
        down.reverse();
        up.extend(down);
        up
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.modulus()?.is_unimodular())
    }

    /// The center is nontrivial exactly when the modulus is trivial.
    pub fn has_nontrivial_center(&self) -> Result<bool> {
        Ok(self.modulus()?.is_trivial())
    }

    /// No label near a vertex divides another label near the same vertex.
    pub fn is_strongly_slide_free(&self) -> bool {
        self.vertices().all(|v| {
            let darts = self.darts_at(v);
            darts.iter().enumerate().all(|(i, &a)| {
                darts.iter().enumerate().all(|(j, &b)| {
                    i == j
                        || !self
                            .label(b)
                            .magnitude()
                            .is_multiple_of(self.label(a).magnitude())
                })
            })
        })
    }

    pub fn is_circle(&self) -> bool {
        self.is_connected() && self.vertices().all(|v| self.valence(v) == 2)
    }

    /// Walks the circle once starting from the first dart at the first vertex,
    /// returning the product of labels at the rear of each traversed dart and
    /// the product of labels at the front.
    pub fn circle_products(&self) -> Result<(BigInt, BigInt)> {
        if !self.is_circle() {
            return Err(Error::NotACircle);
        }
        let mut x = BigInt::one();
        let mut y = BigInt::one();
        let mut d = self.darts_at(VertexId(0))[0];
        for _ in 0..self.edge_count() {
            x *= self.label(d);
            y *= self.label(d.reverse());
            let v = self.terminus(d);
            let back = d.reverse();
            d = *self
                .darts_at(v)
                .iter()
                .find(|&&c| c != back)
                .expect("valence two");
        }
        Ok((x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn betti_examples() {
        assert_eq!(triangle_abc().betti(), 1);
        assert_eq!(lollipop_cover().betti(), 2);
        let mut g = LabelledGraph::new();
        g.add_vertex("v").unwrap();
        assert_eq!(g.betti(), 0);
    }

    #[test]
    fn reduce_absorbs_unit_end() {
        let mut g = LabelledGraph::new();
        g.add_vertex("u").unwrap();
        g.add_vertex("w").unwrap();
        g.add_edge_between("p", "u", "w", 1, 3).unwrap();
        g.add_edge_between("l", "u", "u", 5, 7).unwrap();
        let r = g.reduce().unwrap();
        assert_eq!(r.vertex_count(), 1);
        assert_eq!(r.vertex_name(VertexId(0)), "w");
        assert_eq!(r.edge_count(), 1);
        assert_eq!(r.labels(EdgeId(0)), &[BigInt::from(15), BigInt::from(21)]);
        assert!(r.is_reduced());
    }

    #[test]
    fn reduce_sign_of_unit_label() {
        // a_u^{-1} = a_w^3 gives a_u = a_w^{-3}
        let mut g = LabelledGraph::new();
        g.add_vertex("u").unwrap();
        g.add_vertex("w").unwrap();
        g.add_edge_between("p", "u", "w", -1, 3).unwrap();
        g.add_edge_between("l", "u", "w", 2, 5).unwrap();
        let r = g.reduce().unwrap();
        assert_eq!(r.labels(EdgeId(0)), &[BigInt::from(-6), BigInt::from(5)]);
    }

    #[test]
    fn reduce_identity_and_full_collapse() {
        let bs = bs(2, 3);
        assert_eq!(bs.reduce().unwrap(), bs);
        let mut seg = LabelledGraph::new();
        seg.add_vertex("a").unwrap();
        seg.add_vertex("b").unwrap();
        seg.add_edge_between("e", "a", "b", 1, 1).unwrap();
        let r = seg.reduce().unwrap();
        assert_eq!((r.vertex_count(), r.edge_count()), (1, 0));
    }

    #[test]
    fn reduce_rejects_disconnected() {
        let mut g = LabelledGraph::new();
        g.add_vertex("a").unwrap();
        g.add_vertex("b").unwrap();
        assert_eq!(g.reduce(), Err(Error::Disconnected));
    }

    #[test]
    fn sign_changes() {
        let g = bs(2, -3).sign_change_edge(EdgeId(0)).unwrap();
        assert_eq!(g, bs(-2, 3));
        let f = path_abc(7);
        let vb = f.vertex_id("v_b").unwrap();
        let h = f.sign_change_vertex(vb).unwrap();
        let labels: Vec<i64> = h
            .darts()
            .map(|d| h.label(d).try_into().unwrap())
            .collect();
        assert_eq!(labels, vec![3, -2, -7, 5]);
        assert_eq!(h.sign_change_vertex(vb).unwrap(), f);
        assert!(f.sign_change_vertex(VertexId(9)).is_err());
    }

    #[test]
    fn normalize_examples() {
        let g = circle(&[(-2, -3)]).normalize_signs().unwrap();
        assert_eq!(g, circle(&[(2, 3)]));
        let k = klein().normalize_signs().unwrap();
        let negatives = k.darts().filter(|&d| k.label(d).is_negative()).count();
        assert_eq!(negatives, 1);
        let mut t = LabelledGraph::new();
        for v in ["a", "b", "c", "d"] {
            t.add_vertex(v).unwrap();
        }
        t.add_edge_between("x", "a", "b", -2, 3).unwrap();
        t.add_edge_between("y", "c", "b", 5, -7).unwrap();
        t.add_edge_between("z", "b", "d", -4, -9).unwrap();
        let n = t.normalize_signs().unwrap();
        assert!(n.darts().all(|d| n.label(d).is_positive()));
    }

    #[test]
    fn modulus_examples() {
        let m = bs(2, 3).modulus().unwrap();
        assert_eq!(m.entries.len(), 1);
        assert_eq!(
            m.entries[0].value,
            BigRational::new(BigInt::from(2), BigInt::from(3))
        );
        assert!(!m.is_unimodular());
        assert!(!m.is_trivial());

        let k = klein().modulus().unwrap();
        assert_eq!(k.entries[0].value, BigRational::from_integer(BigInt::from(-1)));
        assert!(k.is_unimodular() && !k.is_trivial());

        let t = path_abcd().modulus().unwrap();
        assert!(t.entries.is_empty());
        assert!(t.is_unimodular() && t.is_trivial());
    }

    #[test]
    fn modulus_cycles_are_closed() {
        let g = triangle_abc();
        let m = g.modulus().unwrap();
        for entry in &m.entries {
            let c = &entry.cycle;
            for w in c.windows(2) {
                assert_eq!(g.terminus(w[0]), g.origin(w[1]));
            }
            assert_eq!(g.terminus(*c.last().unwrap()), g.origin(c[0]));
        }
        // 3/5 · 2/3 · 5/2 around the triangle, in some orientation
        let v = &m.entries[0].value;
        assert!(v.is_one());
    }

    #[test]
    fn slide_free_examples() {
        assert!(bs(2, 3).is_strongly_slide_free());
        assert!(!bs(2, 4).is_strongly_slide_free());
        assert!(triangle_abc().is_strongly_slide_free());
    }

    #[test]
    fn circle_examples() {
        assert!(bs(2, 3).is_circle());
        assert_eq!(
            bs(2, 3).circle_products().unwrap(),
            (BigInt::from(2), BigInt::from(3))
        );
        let (x, y) = triangle_abc().circle_products().unwrap();
        assert_eq!((x, y), (BigInt::from(30), BigInt::from(30)));
        assert!(!path_abc(5).is_circle());
        assert_eq!(path_abc(5).circle_products(), Err(Error::NotACircle));
    }

    #[test]
    fn subtree_examples() {
        assert_eq!(path_abc(5).maximal_subtree().unwrap(), vec![EdgeId(0), EdgeId(1)]);
        assert!(bs(2, 3).maximal_subtree().unwrap().is_empty());
        assert_eq!(triangle_abc().maximal_subtree().unwrap(), vec![EdgeId(0), EdgeId(1)]);
    }
}
