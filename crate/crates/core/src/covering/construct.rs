//! Constructions of admissible maps: branched covers over a plateau, plateau
//! extraction, permutation-voltage covers, the orientation double cover and
//! plateau-free covers.

use num_traits::Signed;

use super::{compose, divide_label, is_topological_covering, AdmissibleMap, GraphMorphism, Namer};
use crate::arith::{divides, smallest_prime_factor, valuation};
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, LabelledGraph, VertexId};
use crate::plateau::{label_primes, plateaux_for_prime, Plateau};

/// A permutation of `0..n`, as the list of images.
pub type Permutation = Vec<usize>;

/// The degree-`p` cover branched over the proper p-plateau `plateau`.
///
/// Vertices and edges of the plateau have a single preimage of multiplicity
/// `p`; every other vertex and edge has `p` preimages of multiplicity 1.
/// Copy `i` of an edge leaving the plateau attaches to copy `i` at its other
/// end, and its label near the plateau is divided by `p`.
pub fn branched_cover(g: &LabelledGraph, plateau: &Plateau) -> Result<AdmissibleMap> {
    branched_cover_over(g, std::slice::from_ref(plateau))
}

/// Like [`branched_cover`], ramified over several vertex-disjoint proper
/// plateaux for the same prime at once. Over a tree with every terminal
/// vertex a 2-plateau this gives a branched 2-cover of the tree.
pub fn branched_cover_over(g: &LabelledGraph, plateaux: &[Plateau]) -> Result<AdmissibleMap> {
    let Some(first) = plateaux.first() else {
        return Err(Error::NotAPlateau("no plateau given".into()));
    };
    let p = first.prime;
    let mut owner = vec![false; g.vertex_count()];
    for plateau in plateaux {
        plateau.verify(g)?;
        if plateau.is_whole_graph {
            return Err(Error::WholeGraphPlateau);
        }
        if plateau.prime != p {
            return Err(Error::NotAPlateau("plateaux for different primes".into()));
        }
        for v in &plateau.vertices {
            if std::mem::replace(&mut owner[v.0], true) {
                return Err(Error::NotAPlateau(format!(
                    "plateaux overlap at {}",
                    g.vertex_name(*v)
                )));
            }
        }
    }
    let in_union = |v: VertexId| owner[v.0];
    let contained = |e: EdgeId| plateaux.iter().any(|pl| pl.contains_edge(e));
    let sheets = usize::try_from(p).map_err(|_| Error::Overflow("prime too large".into()))?;
    let mut src = LabelledGraph::new();
    let mut names = Namer::default();
    // copies[v][i] = copy of v on sheet i
    let mut copies: Vec<Vec<VertexId>> = Vec::with_capacity(g.vertex_count());
    let mut vertex_map = Vec::new();
    let mut vertex_mult = Vec::new();
    for v in g.vertices() {
        let name = g.vertex_name(v);
        if in_union(v) {
            let id = src.add_vertex(names.fresh(name.to_string()))?;
            vertex_map.push(v);
            vertex_mult.push(p);
            copies.push(vec![id; sheets]);
        } else {
            let mut ids = Vec::with_capacity(sheets);
            for i in 1..=sheets {
                ids.push(src.add_vertex(names.fresh(format!("{name}.{i}")))?);
                vertex_map.push(v);
                vertex_mult.push(1);
            }
            copies.push(ids);
        }
    }
    let mut edge_names = Namer::default();
    let mut dart_map = Vec::new();
    let mut edge_mult = Vec::new();
    for e in g.edges() {
        let [a, b] = g.endpoints(e);
        let name = g.edge_name(e);
        if contained(e) {
            let [la, lb] = g.labels(e).clone();
            src.add_edge(edge_names.fresh(name.to_string()), copies[a.0][0], copies[b.0][0], la, lb)?;
            dart_map.push(Dart::forward(e));
            edge_mult.push(p);
            continue;
        }
        let near = |end: usize| {
            let (v, l) = (g.endpoints(e)[end], &g.labels(e)[end]);
            if in_union(v) {
                divide_label(l, p)
            } else {
                l.clone()
            }
        };
        for i in 0..sheets {
            src.add_edge(
                edge_names.fresh(format!("{name}.{}", i + 1)),
                copies[a.0][i],
                copies[b.0][i],
                near(0),
                near(1),
            )?;
            dart_map.push(Dart::forward(e));
            edge_mult.push(1);
        }
    }
    let morphism = GraphMorphism::new(src, g.clone(), vertex_map, dart_map)?;
    AdmissibleMap::new(morphism, vertex_mult, edge_mult)
        .map_err(|e| Error::Invariant(format!("branched cover: {e}")))
}

/// Recovers a proper plateau of the target from a map that is not a
/// topological covering.
///
/// Takes the first source vertex `x` and target dart `e` (in declaration
/// order) with `k_{x,e} > 1` and the smallest prime `p` dividing it. With `δ`
/// the largest exponent of `p` in a vertex multiplicity, the target vertices
/// having a preimage of exponent `δ`, joined by the edges with both labels
/// prime to `p`, form a union of p-plateaux; the component containing the
/// smallest vertex is returned.
pub fn extract_proper_plateau(m: &AdmissibleMap) -> Result<Plateau> {
    if is_topological_covering(m)? {
        return Err(Error::TopologicalCovering);
    }
    let (s, t) = (m.source(), m.target());
    let k = s
        .vertices()
        .flat_map(|x| {
            t.darts_at(m.morphism.vertex(x))
                .iter()
                .map(move |&e| m.local_gcd(x, e))
        })
        .find(|&k| k > 1)
        .ok_or_else(|| Error::Invariant("no local gcd above 1".into()))?;
    let p = smallest_prime_factor(k);
    let delta = s
        .vertices()
        .map(|x| valuation(m.vertex_mult(x), p))
        .max()
        .unwrap_or(0);
    let mut in_layer = vec![false; t.vertex_count()];
    for x in s.vertices() {
        if valuation(m.vertex_mult(x), p) >= delta {
            in_layer[m.morphism.vertex(x).0] = true;
        }
    }
    let joins = |e: EdgeId| {
        let [a, b] = t.endpoints(e);
        in_layer[a.0] && in_layer[b.0] && t.labels(e).iter().all(|l| !divides(p, l))
    };
    let start = t
        .vertices()
        .find(|v| in_layer[v.0])
        .ok_or_else(|| Error::Invariant("empty layer".into()))?;
    let mut seen = vec![false; t.vertex_count()];
    seen[start.0] = true;
    let mut stack = vec![start];
    let mut vertices = vec![start];
    while let Some(v) = stack.pop() {
        for &d in t.darts_at(v) {
            let w = t.terminus(d);
            if joins(d.edge) && !seen[w.0] {
                seen[w.0] = true;
                vertices.push(w);
                stack.push(w);
            }
        }
    }
    let edges: Vec<EdgeId> = t.edges().filter(|&e| joins(e) && seen[t.endpoints(e)[0].0]).collect();
    let plateau = Plateau::checked(t, p, vertices, edges)
        .map_err(|e| Error::Invariant(format!("extracted set is not a plateau: {e}")))?;
    if plateau.is_whole_graph {
        return Err(Error::Invariant("extracted plateau is the whole graph".into()));
    }
    Ok(plateau)
}

fn check_permutation(n: usize, perm: &[usize]) -> bool {
    let mut seen = vec![false; n];
    perm.len() == n
        && perm.iter().all(|&i| {
            if i >= n || seen[i] {
                return false;
            }
            seen[i] = true;
            true
        })
}

/// The permutation-voltage cover of degree `n`: vertices `(v, i)`, and for
/// every edge `ε` from `u` to `w` and every `i`, an edge from `(u, i)` to
/// `(w, σ_ε(i))` with the same labels. All multiplicities are 1. The source
/// may be disconnected; see [`AdmissibleMap::components`].
///
/// Copies are named `name.i` (1-based) when `n > 1`; for `n = 1` the result is
/// the identity map.
pub fn voltage_cover(g: &LabelledGraph, n: usize, perms: &[Permutation]) -> Result<AdmissibleMap> {
    if n == 0 {
        return Err(Error::InvalidPermutation("degree must be positive".into()));
    }
    if perms.len() != g.edge_count() {
        return Err(Error::InvalidPermutation(format!(
            "{} permutations for {} edges",
            perms.len(),
            g.edge_count()
        )));
    }
    for (e, perm) in g.edges().zip(perms) {
        if !check_permutation(n, perm) {
            return Err(Error::InvalidPermutation(format!(
                "{perm:?} on edge {} is not a permutation of {n} sheets",
                g.edge_name(e)
            )));
        }
    }
    if n == 1 {
        return Ok(AdmissibleMap::identity(g));
    }
    let mut src = LabelledGraph::new();
    let mut names = Namer::default();
    let mut vertex_map = Vec::new();
    for v in g.vertices() {
        for i in 1..=n {
            src.add_vertex(names.fresh(format!("{}.{i}", g.vertex_name(v))))?;
            vertex_map.push(v);
        }
    }
    let copy = |v: VertexId, i: usize| VertexId(v.0 * n + i);
    let mut edge_names = Namer::default();
    let mut dart_map = Vec::new();
    for (e, perm) in g.edges().zip(perms) {
        let [a, b] = g.endpoints(e);
        let [la, lb] = g.labels(e);
        for i in 0..n {
            src.add_edge(
                edge_names.fresh(format!("{}.{}", g.edge_name(e), i + 1)),
                copy(a, i),
                copy(b, perm[i]),
                la.clone(),
                lb.clone(),
            )?;
            dart_map.push(Dart::forward(e));
        }
    }
    let (vc, ec) = (src.vertex_count(), src.edge_count());
    let morphism = GraphMorphism::new(src, g.clone(), vertex_map, dart_map)?;
    AdmissibleMap::new(morphism, vec![1; vc], vec![1; ec])
        .map_err(|e| Error::Invariant(format!("voltage cover: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DoubleCover {
    /// The modulus is already positive; the identity suffices.
    AlreadyPositive,
    Cover(AdmissibleMap),
}

/// The connected double cover on which the modulus becomes positive: the
/// voltage cover swapping sheets along every edge whose two labels have
/// opposite signs.
pub fn orientation_double_cover(g: &LabelledGraph) -> Result<DoubleCover> {
    if g.modulus()?.is_positive() {
        return Ok(DoubleCover::AlreadyPositive);
    }
    let perms: Vec<Permutation> = g
        .edges()
        .map(|e| {
            let [a, b] = g.labels(e);
            if a.is_negative() != b.is_negative() {
                vec![1, 0]
            } else {
                vec![0, 1]
            }
        })
        .collect();
    Ok(DoubleCover::Cover(voltage_cover(g, 2, &perms)?))
}

/// Union of the proper p-plateaux of `g`: membership of vertices and edges.
fn plateau_union(g: &LabelledGraph, p: u64) -> Option<(Vec<bool>, Vec<bool>)> {
    let ps = plateaux_for_prime(g, p).expect("p is prime");
    if ps.is_empty() {
        return None;
    }
    let mut vs = vec![false; g.vertex_count()];
    let mut es = vec![false; g.edge_count()];
    for pl in &ps {
        for v in &pl.vertices {
            vs[v.0] = true;
        }
        for e in &pl.edges {
            es[e.0] = true;
        }
    }
    Some((vs, es))
}

/// One round of the plateau-free construction for the prime `p`.
///
/// Labels are divided by `p` at every dart leaving the union of the proper
/// p-plateaux (origin inside, edge not contained) until no proper p-plateau is
/// left, after `r` rounds. A vertex lying in `P(v)` of these unions gets
/// `p^(r-P(v))` preimages of multiplicity `p^P(v)`; an edge contained in
/// `P(e)` of them gets `p^(r-P(e))` lifts of multiplicity `p^P(e)`, with the
/// final divided labels. Lift `j` attaches to preimage `j mod N` at each end.
/// Returns the restriction to the component of the first source vertex.
fn plateau_free_step(g: &LabelledGraph, p: u64) -> Result<AdmissibleMap> {
    let mut current = g.clone();
    let mut occ_v = vec![0u32; g.vertex_count()];
    let mut occ_e = vec![0u32; g.edge_count()];
    let mut r = 0u32;
    while let Some((vs, es)) = plateau_union(&current, p) {
        r += 1;
        let mut next = current.clone();
        for d in current.darts() {
            let o = current.origin(d);
            if vs[o.0] && !es[d.edge.0] {
                next.set_label(d, divide_label(current.label(d), p));
            }
        }
        for v in g.vertices() {
            occ_v[v.0] += vs[v.0] as u32;
        }
        for e in g.edges() {
            occ_e[e.0] += es[e.0] as u32;
        }
        current = next;
    }
    if r == 0 {
        return Ok(AdmissibleMap::identity(g));
    }
    let pow = |e: u32| {
        p.checked_pow(e)
            .ok_or_else(|| Error::Overflow(format!("{p}^{e} exceeds 64 bits")))
    };
    let count = |e: u32| -> Result<usize> {
        usize::try_from(pow(e)?).map_err(|_| Error::Overflow("cover too large".into()))
    };
    let mut src = LabelledGraph::new();
    let mut names = Namer::default();
    let mut first = Vec::with_capacity(g.vertex_count());
    let mut sizes = Vec::with_capacity(g.vertex_count());
    let mut vertex_map = Vec::new();
    let mut vertex_mult = Vec::new();
    for v in g.vertices() {
        let n = count(r - occ_v[v.0])?;
        let mult = pow(occ_v[v.0])?;
        first.push(src.vertex_count());
        sizes.push(n);
        for j in 0..n {
            let base = if n == 1 {
                g.vertex_name(v).to_string()
            } else {
                format!("{}.{}", g.vertex_name(v), j + 1)
            };
            src.add_vertex(names.fresh(base))?;
            vertex_map.push(v);
            vertex_mult.push(mult);
        }
    }
    let mut edge_names = Namer::default();
    let mut dart_map = Vec::new();
    let mut edge_mult = Vec::new();
    for e in g.edges() {
        let n = count(r - occ_e[e.0])?;
        let mult = pow(occ_e[e.0])?;
        let [a, b] = g.endpoints(e);
        let [la, lb] = current.labels(e);
        for j in 0..n {
            let base = if n == 1 {
                g.edge_name(e).to_string()
            } else {
                format!("{}.{}", g.edge_name(e), j + 1)
            };
            src.add_edge(
                edge_names.fresh(base),
                VertexId(first[a.0] + j % sizes[a.0]),
                VertexId(first[b.0] + j % sizes[b.0]),
                la.clone(),
                lb.clone(),
            )?;
            dart_map.push(Dart::forward(e));
            edge_mult.push(mult);
        }
    }
    let morphism = GraphMorphism::new(src, g.clone(), vertex_map, dart_map)?;
    let map = AdmissibleMap::new(morphism, vertex_mult, edge_mult)
        .map_err(|e| Error::Invariant(format!("plateau-free step for p={p}: {e}")))?;
    Ok(map.restrict_to_component(VertexId(0)))
}

/// An admissible map onto `g` from a connected graph without proper plateaux.
///
/// Primes are handled one at a time, smallest first, composing the maps;
/// the loop stops once the source has no proper plateau for any prime.
pub fn plateau_free_cover(g: &LabelledGraph) -> Result<AdmissibleMap> {
    g.require_connected()?;
    let mut map = AdmissibleMap::identity(g);
    for _ in 0..64 {
        let src = map.source().clone();
        let next_prime = label_primes(&src)
            .into_iter()
            .find(|&p| !plateaux_for_prime(&src, p).expect("p is prime").is_empty());
        let Some(p) = next_prime else {
            return Ok(map);
        };
        let step = plateau_free_step(&src, p)?;
        map = compose(&map, &step)?;
    }
    Err(Error::Invariant("plateau-free construction did not terminate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::verify_admissible;
    use crate::fixtures::*;
    use crate::graph::isomorphism;
    use crate::plateau::{has_proper_plateau, rank};
    use num_bigint::BigInt;

    fn only_plateau(g: &LabelledGraph, p: u64) -> Plateau {
        let mut ps = plateaux_for_prime(g, p).unwrap();
        assert_eq!(ps.len(), 1);
        ps.pop().unwrap()
    }

    #[test]
    fn branched_cover_of_bs24() {
        let g = bs(2, 4);
        let m = branched_cover(&g, &only_plateau(&g, 2)).unwrap();
        let s = m.source();
        assert_eq!((s.vertex_count(), s.edge_count()), (1, 2));
        for e in s.edges() {
            assert_eq!(s.labels(e), &[BigInt::from(1), BigInt::from(2)]);
        }
        assert_eq!(m.vertex_multiplicity, vec![2]);
        assert_eq!(s.betti(), 2);
        assert!(!is_topological_covering(&m).unwrap());
        assert_eq!(m.total_multiplicity(), 2);
    }

    #[test]
    fn branched_cover_over_loop_plateau() {
        let g = lollipop();
        let w = g.vertex_id("w").unwrap();
        let pl = plateaux_for_prime(&g, 2)
            .unwrap()
            .into_iter()
            .find(|p| p.contains_vertex(w))
            .unwrap();
        let m = branched_cover(&g, &pl).unwrap();
        let s = m.source();
        assert_eq!((s.vertex_count(), s.edge_count()), (3, 3));
        assert_eq!(rank(s).unwrap(), 3);
        let mut expected = LabelledGraph::new();
        for v in ["w", "u1", "u2"] {
            expected.add_vertex(v).unwrap();
        }
        expected.add_edge_between("t", "w", "w", 5, 3).unwrap();
        expected.add_edge_between("x", "u1", "w", 2, 1).unwrap();
        expected.add_edge_between("y", "u2", "w", 2, 1).unwrap();
        assert!(isomorphism(s, &expected).is_some());
    }

    #[test]
    fn branched_cover_over_singleton() {
        let g = path_abc(6);
        let m = branched_cover(&g, &only_plateau(&g, 2)).unwrap();
        assert_eq!(m.source().vertex_count(), 5);
        // two copies of a tree glued at one vertex stay a tree
        assert_eq!(m.source().betti(), 0);
    }

    #[test]
    fn branched_cover_rejects_whole_graph() {
        let g = bs(2, 3);
        let whole = crate::plateau::all_p_plateaux(&g, 5).unwrap().pop().unwrap();
        assert_eq!(branched_cover(&g, &whole), Err(Error::WholeGraphPlateau));
    }

    #[test]
    fn extraction_round_trips() {
        let g = bs(2, 4);
        let pl = only_plateau(&g, 2);
        assert_eq!(extract_proper_plateau(&branched_cover(&g, &pl).unwrap()).unwrap(), pl);
        let g = triangle_abc();
        for pl in crate::plateau::all_plateaux(&g).proper_plateaux {
            let got = extract_proper_plateau(&branched_cover(&g, &pl).unwrap()).unwrap();
            assert_eq!(got, pl);
        }
        let m = lollipop_index_two();
        let got = extract_proper_plateau(&m).unwrap();
        assert_eq!(got.prime, 2);
        assert_eq!(got.vertices, vec![VertexId(0)]);
        assert_eq!(
            extract_proper_plateau(&AdmissibleMap::identity(&g)),
            Err(Error::TopologicalCovering)
        );
    }

    #[test]
    fn voltage_examples() {
        let g = bs(2, 3);
        let m = voltage_cover(&g, 2, &[vec![1, 0]]).unwrap();
        assert!(isomorphism(m.source(), &circle(&[(2, 3), (2, 3)])).is_some());
        assert!(is_topological_covering(&m).unwrap());
        assert_eq!(voltage_cover(&g, 1, &[vec![0]]).unwrap(), AdmissibleMap::identity(&g));
        let two = voltage_cover(&triangle_abc(), 2, &vec![vec![0, 1]; 3]).unwrap();
        let parts = two.components();
        assert_eq!(parts.len(), 2);
        for part in &parts {
            assert!(isomorphism(part.source(), &triangle_abc()).is_some());
            assert!(verify_admissible(part).is_admissible());
        }
        assert!(voltage_cover(&g, 2, &[vec![0, 0]]).is_err());
        assert!(voltage_cover(&g, 2, &[]).is_err());
    }

    #[test]
    fn double_cover_examples() {
        let DoubleCover::Cover(m) = orientation_double_cover(&klein()).unwrap() else {
            panic!("klein bottle needs a cover");
        };
        assert!(m.source().is_connected());
        assert!(isomorphism(m.source(), &circle(&[(1, -1), (1, -1)])).is_some());
        let n = m.source().normalize_signs().unwrap();
        assert!(n.darts().all(|d| n.label(d).is_positive()));

        let DoubleCover::Cover(m) = orientation_double_cover(&bs(2, -3)).unwrap() else {
            panic!("negative modulus");
        };
        assert!(m.source().modulus().unwrap().is_positive());
        assert_eq!(orientation_double_cover(&bs(2, 3)).unwrap(), DoubleCover::AlreadyPositive);
    }

    #[test]
    fn plateau_free_examples() {
        let m = plateau_free_cover(&bs(2, 4)).unwrap();
        let mut expected = LabelledGraph::new();
        expected.add_vertex("v").unwrap();
        expected.add_edge_between("a", "v", "v", 1, 2).unwrap();
        expected.add_edge_between("b", "v", "v", 1, 2).unwrap();
        assert!(isomorphism(m.source(), &expected).is_some());
        assert_eq!(m.total_multiplicity(), 2);
        assert_eq!(plateau_free_cover(&bs(2, 3)).unwrap(), AdmissibleMap::identity(&bs(2, 3)));

        let m = plateau_free_cover(&lollipop()).unwrap();
        assert!(verify_admissible(&m).is_admissible());
        assert!(!has_proper_plateau(m.source()));
        assert!(m.source().is_connected());
        assert!(m.total_multiplicity().is_power_of_two());
    }
}
