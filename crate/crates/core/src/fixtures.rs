//! Small reference graphs used throughout the tests, the acceptance suite and
//! the command-line examples.

use crate::covering::{AdmissibleMap, GraphMorphism};
use crate::graph::{Dart, EdgeId, LabelledGraph, VertexId};

/// One vertex `v` with one loop `t` labelled `(m, n)`: the group BS(m, n).
pub fn bs(m: i64, n: i64) -> LabelledGraph {
    let mut g = LabelledGraph::new();
    let v = g.add_vertex("v").unwrap();
    g.add_edge("t", v, v, m, n).unwrap();
    g
}

/// A circle with vertices `c0 … c(k-1)`; edge `ei` runs from `ci` to
/// `c(i+1)` with labels `pairs[i]`. A single pair gives a loop.
pub fn circle(pairs: &[(i64, i64)]) -> LabelledGraph {
    let k = pairs.len();
    let mut g = LabelledGraph::new();
    for i in 0..k {
        g.add_vertex(format!("c{i}")).unwrap();
    }
    for (i, &(x, y)) in pairs.iter().enumerate() {
        g.add_edge(format!("e{i}"), VertexId(i), VertexId((i + 1) % k), x, y)
            .unwrap();
    }
    g
}

/// The Klein bottle group `t a t⁻¹ = a⁻¹`.
pub fn klein() -> LabelledGraph {
    circle(&[(1, -1)])
}

/// Path `v_a –e_1– v_b –e_2– v_c` with labels `3, 2 | n, 5`
/// (the group ⟨a,b,c | a³=b², bⁿ=c⁵⟩).
pub fn path_abc(n: i64) -> LabelledGraph {
    let mut g = LabelledGraph::new();
    for v in ["v_a", "v_b", "v_c"] {
        g.add_vertex(v).unwrap();
    }
    g.add_edge_between("e_1", "v_a", "v_b", 3, 2).unwrap();
    g.add_edge_between("e_2", "v_b", "v_c", n, 5).unwrap();
    g
}

/// Path `v_a – v_b – v_c – v_d` with labels `3, 2 | 3, 7 | 10, 5`.
pub fn path_abcd() -> LabelledGraph {
    let mut g = LabelledGraph::new();
    for v in ["v_a", "v_b", "v_c", "v_d"] {
        g.add_vertex(v).unwrap();
    }
    g.add_edge_between("e_1", "v_a", "v_b", 3, 2).unwrap();
    g.add_edge_between("e_2", "v_b", "v_c", 3, 7).unwrap();
    g.add_edge_between("e_3", "v_c", "v_d", 10, 5).unwrap();
    g
}

/// Triangle with `e_1 = v_a v_b (3, 5)`, `e_2 = v_b v_c (2, 3)`,
/// `e_3 = v_c v_a (5, 2)`.
pub fn triangle_abc() -> LabelledGraph {
    let mut g = LabelledGraph::new();
    for v in ["v_a", "v_b", "v_c"] {
        g.add_vertex(v).unwrap();
    }
    g.add_edge_between("e_1", "v_a", "v_b", 3, 5).unwrap();
    g.add_edge_between("e_2", "v_b", "v_c", 2, 3).unwrap();
    g.add_edge_between("e_3", "v_c", "v_a", 5, 2).unwrap();
    g
}

/// Terminal vertex `u` joined to `w` by `e (2, 2)`, with a loop `t (5, 3)` at
/// `w`: the group ⟨a, b, t | a² = b², t b³ t⁻¹ = b⁵⟩.
pub fn lollipop() -> LabelledGraph {
    let mut g = LabelledGraph::new();
    g.add_vertex("u").unwrap();
    g.add_vertex("w").unwrap();
    g.add_edge_between("e", "u", "w", 2, 2).unwrap();
    g.add_edge_between("t", "w", "w", 5, 3).unwrap();
    g
}

/// Two vertices `y`, `x` joined by two edges labelled `(1, 1)`, with a loop
/// `l (5, 3)` at `x`.
pub fn lollipop_cover() -> LabelledGraph {
    let mut g = LabelledGraph::new();
    g.add_vertex("y").unwrap();
    g.add_vertex("x").unwrap();
    g.add_edge_between("a", "y", "x", 1, 1).unwrap();
    g.add_edge_between("b", "y", "x", 1, 1).unwrap();
    g.add_edge_between("l", "x", "x", 5, 3).unwrap();
    g
}

/// The index-two admissible map [`lollipop_cover`] → [`lollipop`]:
/// both vertices have multiplicity 2, the two unit edges multiplicity 1 and
/// the loop multiplicity 2.
pub fn lollipop_index_two() -> AdmissibleMap {
    let morphism = GraphMorphism::new(
        lollipop_cover(),
        lollipop(),
        vec![VertexId(0), VertexId(1)],
        vec![
            Dart::forward(EdgeId(0)),
            Dart::forward(EdgeId(0)),
            Dart::forward(EdgeId(1)),
        ],
    )
    .unwrap();
    AdmissibleMap::new(morphism, vec![2, 2], vec![1, 1, 2]).unwrap()
}
