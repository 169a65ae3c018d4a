//! Label-preserving isomorphism of labelled graphs, and the colour refinement
//! used both to prune the isomorphism search and to compare universal covers.

use std::collections::{BTreeMap, HashMap};

use super::{Dart, EdgeId, Label, LabelledGraph, VertexId};

/// An isomorphism `g1 → g2`: a vertex bijection and, for every edge of `g1`,
/// the image of its side-0 dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphIsomorphism {
    pub vertex_map: Vec<VertexId>,
    pub dart_map: Vec<Dart>,
}

type Signature = (usize, Vec<(Label, Label, usize)>);

/// Joint colour refinement over several graphs.
///
/// Every vertex starts with the same colour and is repeatedly recoloured by
/// its old colour together with the multiset of `(λ_e, λ_ẽ, colour of the
/// terminus)` over its darts. Colours are numbered by sorting signatures, so
/// the result does not depend on vertex order and colours are comparable
/// across the graphs.
pub fn stable_refinement(graphs: &[&LabelledGraph]) -> Vec<Vec<usize>> {
    let mut colors: Vec<Vec<usize>> = graphs.iter().map(|g| vec![0; g.vertex_count()]).collect();
    let mut count = 1;
    loop {
        let sigs: Vec<Vec<Signature>> = graphs
            .iter()
            .zip(&colors)
            .map(|(g, col)| {
                g.vertices()
                    .map(|v| {
                        let mut around: Vec<(Label, Label, usize)> = g
                            .darts_at(v)
                            .iter()
                            .map(|&d| {
                                (
                                    g.label(d).clone(),
                                    g.label(d.reverse()).clone(),
                                    col[g.terminus(d).0],
                                )
                            })
                            .collect();
                        around.sort();
                        (col[v.0], around)
                    })
                    .collect()
            })
            .collect();
        let mut palette: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in sigs.iter().flatten() {
            palette.insert(s, 0);
        }
        for (i, slot) in palette.values_mut().enumerate() {
            *slot = i;
        }
        let next: Vec<Vec<usize>> = sigs
            .iter()
            .map(|gs| gs.iter().map(|s| palette[s]).collect())
            .collect();
        let next_count = palette.len();
        colors = next;
        if next_count == count {
            return colors;
        }
        count = next_count;
    }
}

/// Edge label lists between ordered vertex pairs: for `a != b`, the sorted
/// labels `(λ near a, λ near b)`; for loops, sorted unordered pairs.
fn pair_table(g: &LabelledGraph) -> HashMap<(usize, usize), Vec<(Label, Label)>> {
    let mut table: HashMap<(usize, usize), Vec<(Label, Label)>> = HashMap::new();
    for e in g.edges() {
        let [a, b] = g.endpoints(e);
        let [la, lb] = g.labels(e).clone();
        if a == b {
            let pair = if la <= lb { (la, lb) } else { (lb, la) };
            table.entry((a.0, a.0)).or_default().push(pair);
        } else {
            table.entry((a.0, b.0)).or_default().push((la.clone(), lb.clone()));
            table.entry((b.0, a.0)).or_default().push((lb, la));
        }
    }
    for v in table.values_mut() {
        v.sort();
    }
    table
}

struct Search<'a> {
    g1: &'a LabelledGraph,
    g2: &'a LabelledGraph,
    t1: HashMap<(usize, usize), Vec<(Label, Label)>>,
    t2: HashMap<(usize, usize), Vec<(Label, Label)>>,
    c1: Vec<usize>,
    c2: Vec<usize>,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, u: usize, image: usize) -> bool {
        let empty = Vec::new();
        self.order.iter().all(|&w| {
            let Some(wi) = (if w == u { Some(image) } else { self.map[w] }) else {
                return true;
            };
            self.t1.get(&(u, w)).unwrap_or(&empty) == self.t2.get(&(image, wi)).unwrap_or(&empty)
        })
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        for cand in 0..self.g2.vertex_count() {
            if self.used[cand] || self.c2[cand] != self.c1[u] {
                continue;
            }
            if self.g1.valence(VertexId(u)) != self.g2.valence(VertexId(cand)) {
                continue;
            }
            if !self.consistent(u, cand) {
                continue;
            }
            self.map[u] = Some(cand);
            self.used[cand] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.map[u] = None;
            self.used[cand] = false;
        }
        false
    }
}

/// Finds a label-preserving isomorphism `g1 → g2`, if one exists.
///
/// Backtracking over vertices in breadth-first order, restricted to
/// candidates with the same refined colour.
pub fn isomorphism(g1: &LabelledGraph, g2: &LabelledGraph) -> Option<GraphIsomorphism> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let colors = stable_refinement(&[g1, g2]);
    let mut h1 = colors[0].clone();
    let mut h2 = colors[1].clone();
    h1.sort();
    h2.sort();
    if h1 != h2 {
        return None;
    }
    let mut order = Vec::with_capacity(g1.vertex_count());
    let mut seen = vec![false; g1.vertex_count()];
    for root in g1.vertices() {
        if seen[root.0] {
            continue;
        }
        seen[root.0] = true;
        let mut i = order.len();
        order.push(root.0);
        while i < order.len() {
            let v = order[i];
            for &d in g1.darts_at(VertexId(v)) {
                let w = g1.terminus(d).0;
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut search = Search {
        g1,
        g2,
        t1: pair_table(g1),
        t2: pair_table(g2),
        c1: colors[0].clone(),
        c2: colors[1].clone(),
        order,
        map: vec![None; g1.vertex_count()],
        used: vec![false; g2.vertex_count()],
    };
    if !search.extend(0) {
        return None;
    }
    let vertex_map: Vec<VertexId> = search
        .map
        .iter()
        .map(|m| VertexId(m.expect("complete")))
        .collect();
    let mut taken = vec![false; g2.edge_count()];
    let mut dart_map = Vec::with_capacity(g1.edge_count());
    for e in g1.edges() {
        let [a, b] = g1.endpoints(e);
        let (ia, ib) = (vertex_map[a.0], vertex_map[b.0]);
        let [la, lb] = g1.labels(e);
        let hit = g2.edges().filter(|f| !taken[f.0]).find_map(|f| {
            [Dart::new(f, 0), Dart::new(f, 1)].into_iter().find(|&d| {
                g2.origin(d) == ia
                    && g2.terminus(d) == ib
                    && g2.label(d) == la
                    && g2.label(d.reverse()) == lb
            })
        })?;
        taken[hit.edge.0] = true;
        dart_map.push(hit);
    }
    Some(GraphIsomorphism {
        vertex_map,
        dart_map,
    })
}

impl GraphIsomorphism {
    pub fn edge_image(&self, e: EdgeId) -> Dart {
        self.dart_map[e.0]
    }
}
