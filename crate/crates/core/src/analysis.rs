//! Counting arguments around an admissible map: vertex defects, bad vertices,
//! totally unfolded and minimal plateaux, the accordion / branched-cover
//! classification, and an audit of the inequalities relating the Betti
//! numbers and terminal-vertex counts of source and target.

use std::fmt;

use crate::covering::{covering_conditions, verify_admissible, Admissibility, AdmissibleMap};
use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, VertexId};
use crate::hitting_set;
use crate::plateau::{all_p_plateaux, all_plateaux, label_primes, mu, Plateau};

fn require(m: &AdmissibleMap) -> Result<()> {
    match verify_admissible(m) {
        Admissibility::Admissible => Ok(()),
        Admissibility::Incidence(s) => Err(Error::Incidence(s)),
        Admissibility::Condition(s) => Err(Error::NotAdmissible(s)),
    }
}

/// `|d - 2|`, i.e. twice `|d/2 - 1|`.
fn defect2(d: usize) -> i64 {
    (d as i64 - 2).abs()
}

/// Twice `Δ_v = Σ_{x over v} |d_x/2 − 1| − |d_v/2 − 1|`, per target vertex.
pub fn vertex_deltas(m: &AdmissibleMap) -> Vec<i64> {
    let (s, t) = (m.source(), m.target());
    let mut out: Vec<i64> = t.vertices().map(|v| -defect2(t.valence(v))).collect();
    for x in s.vertices() {
        out[m.morphism.vertex(x).0] += defect2(s.valence(x));
    }
    out
}

/// Terminal target vertices all of whose preimages have valence 2.
///
/// The label near such a vertex is necessarily even; an odd one is reported
/// as an invariant failure.
pub fn bad_vertices(m: &AdmissibleMap) -> Result<Vec<VertexId>> {
    require(m)?;
    let (s, t) = (m.source(), m.target());
    let mut out = Vec::new();
    for v in t.vertices().filter(|&v| t.is_terminal(v)) {
        if m.preimages(v).iter().all(|&x| s.valence(x) == 2) {
            let d = t.darts_at(v)[0];
            if !crate::arith::divides(2, t.label(d)) {
                return Err(Error::Invariant(format!(
                    "bad vertex {} carries the odd label {}",
                    t.vertex_name(v),
                    t.label(d)
                )));
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Whether every boundary dart `e` of the p-plateau `plateau` has a number of
/// lifts divisible by `p` at every preimage of its origin.
pub fn totally_unfolded(m: &AdmissibleMap, plateau: &Plateau) -> Result<bool> {
    plateau.verify(m.target())?;
    let p = plateau.prime as usize;
    Ok(plateau.boundary(m.target()).into_iter().all(|e| {
        m.preimages(m.target().origin(e))
            .into_iter()
            .all(|x| m.lifts_at(x, e).len().is_multiple_of(p))
    }))
}

/// A minimal plateau together with every prime for which it is a totally
/// unfolded plateau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPlateau {
    /// Carries the smallest of `primes`.
    pub plateau: Plateau,
    pub primes: Vec<u64>,
}

/// Interior totally unfolded plateaux of the target, grouped by subgraph.
fn unfolded_interior(m: &AdmissibleMap) -> Result<Vec<MinimalPlateau>> {
    let t = m.target();
    let mut out: Vec<MinimalPlateau> = Vec::new();
    for p in all_plateaux(t).proper_plateaux {
        if !p.is_interior(t) || !totally_unfolded(m, &p)? {
            continue;
        }
        match out
            .iter_mut()
            .find(|q| q.plateau.vertices == p.vertices && q.plateau.edges == p.edges)
        {
            Some(q) => q.primes.push(p.prime),
            None => out.push(MinimalPlateau {
                primes: vec![p.prime],
                plateau: p,
            }),
        }
    }
    Ok(out)
}

fn sub_of(a: &Plateau, b: &Plateau) -> bool {
    a.vertices.iter().all(|&v| b.contains_vertex(v)) && a.edges.iter().all(|&e| b.contains_edge(e))
}

/// Interior totally unfolded plateaux that contain no other one, ordered by
/// smallest prime then smallest vertex.
pub fn minimal_plateaux(m: &AdmissibleMap) -> Result<Vec<MinimalPlateau>> {
    require(m)?;
    let all = unfolded_interior(m)?;
    let minimal = all
        .iter()
        .filter(|p| {
            !all.iter()
                .any(|q| q.plateau != p.plateau && sub_of(&q.plateau, &p.plateau))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

/// Minimal number of vertices meeting every minimal plateau.
pub fn minimal_plateau_cover(m: &AdmissibleMap) -> Result<usize> {
    let sets: Vec<Vec<usize>> = minimal_plateaux(m)?
        .iter()
        .map(|p| p.plateau.vertices.iter().map(|v| v.0).collect())
        .collect();
    Ok(hitting_set::minimum_size(m.target().vertex_count(), &sets))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapKind {
    /// A circle folded onto an interval in `2·size` monotone pieces.
    Accordion { size: usize },
    /// Two-to-one over a tree except at its terminal vertices.
    BranchedTwoCoverOfTree,
    /// Branched two-to-one over a tree, also ramified over the listed
    /// minimal 2-plateaux.
    GeneralizedBranched { branching_plateaux: Vec<Plateau> },
    Ordinary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapClassification {
    pub kind: MapKind,
    pub exceptional: bool,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::Accordion { size } => write!(f, "accordion size={size}"),
            MapKind::BranchedTwoCoverOfTree => write!(f, "branched-2-cover-of-tree"),
            MapKind::GeneralizedBranched { branching_plateaux } => {
                write!(f, "generalized-branched plateaux={}", branching_plateaux.len())
            }
            MapKind::Ordinary => write!(f, "ordinary"),
        }
    }
}

fn is_circle_graph(g: &LabelledGraph) -> bool {
    g.is_connected() && g.vertices().all(|v| g.valence(v) == 2)
}

fn is_interval(g: &LabelledGraph) -> bool {
    g.is_connected()
        && g.betti() == 0
        && g.terminal_count() == 2
        && g.vertices().all(|v| g.valence(v) == 1 || g.valence(v) == 2)
}

/// Whether collapsing each plateau of `ps` (pairwise disjoint) to a point
/// leaves a tree.
fn collapses_to_tree(g: &LabelledGraph, ps: &[Plateau]) -> bool {
    let mut class: Vec<usize> = (0..g.vertex_count()).collect();
    for p in ps {
        let head = p.vertices[0].0;
        for v in &p.vertices {
            class[v.0] = head;
        }
    }
    let mut classes = class.clone();
    classes.sort_unstable();
    classes.dedup();
    let kept: Vec<_> = g
        .edges()
        .filter(|&e| !ps.iter().any(|p| p.contains_edge(e)))
        .collect();
    if kept.len() + 1 != classes.len() {
        return false;
    }
    // connected with |E| = |V| - 1: check for cycles with union-find
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in kept {
        let [a, b] = g.endpoints(e);
        let (ra, rb) = (find(&mut parent, class[a.0]), find(&mut parent, class[b.0]));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Checks the conditions of a generalized branched 2-cover of a tree with
/// branching plateaux `ps`.
fn branched_over(m: &AdmissibleMap, ps: &[Plateau]) -> bool {
    let t = m.target();
    if !collapses_to_tree(t, ps) {
        return false;
    }
    let in_branching = |v: VertexId| ps.iter().any(|p| p.contains_vertex(v));
    let frontier: Vec<VertexId> = ps.iter().flat_map(|p| p.frontier(t)).collect();
    for v in t.vertices() {
        let n = m.preimages(v).len();
        if t.is_terminal(v) || frontier.contains(&v) {
            if n != 1 {
                return false;
            }
        } else if !in_branching(v) && n != 2 {
            return false;
        }
    }
    t.edges()
        .filter(|&e| !ps.iter().any(|p| p.contains_edge(e)))
        .all(|e| m.edge_preimages(e).len() == 2)
}

/// Accordion, (generalized) branched 2-cover of a tree, or ordinary.
///
/// For the generalized case only one set of branching plateaux can work: a
/// minimal 2-plateau must be branching as soon as one of its frontier points
/// has a single preimage (otherwise its points would need two), and a
/// branching plateau needs every frontier point to have a single preimage. So
/// the candidate set is determined and checked once.
pub fn classify(m: &AdmissibleMap) -> Result<MapClassification> {
    require(m)?;
    m.source().require_connected()?;
    let (s, t) = (m.source(), m.target());
    let kind = if is_circle_graph(s) && is_interval(t) {
        let end = t.vertices().find(|&v| t.is_terminal(v)).expect("two ends");
        match m.preimages(end).len() {
            1 => MapKind::BranchedTwoCoverOfTree,
            size => MapKind::Accordion { size },
        }
    } else {
        let forced: Vec<Plateau> = minimal_plateaux(m)?
            .into_iter()
            .filter(|p| p.primes.contains(&2))
            .map(|p| Plateau { prime: 2, ..p.plateau })
            .filter(|p| p.frontier(t).iter().any(|&v| m.preimages(v).len() == 1))
            .collect();
        if branched_over(m, &forced) {
            if forced.is_empty() {
                MapKind::BranchedTwoCoverOfTree
            } else {
                MapKind::GeneralizedBranched {
                    branching_plateaux: forced,
                }
            }
        } else {
            MapKind::Ordinary
        }
    };
    Ok(MapClassification {
        exceptional: kind != MapKind::Ordinary,
        kind,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Hypothesis not met (for instance an unreduced target).
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

/// Quantities entering the inequalities; barred ones refer to the source.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quantities {
    pub beta: usize,
    pub t: usize,
    pub t_good: usize,
    pub c: usize,
    pub c_good: usize,
    pub mu: usize,
    pub beta_bar: usize,
    pub t_bar: usize,
    pub mu_bar: usize,
    pub bad_vertices: usize,
    pub bad_plateaux: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub quantities: Quantities,
    pub classification: MapClassification,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Twice each side of the three counting identities `β = 1 + Σ(d/2 − 1)`,
/// `β + t = 1 + Σ|d/2 − 1|`, `β + t/2 = 1 + Σ max(d/2 − 1, 0)`.
pub fn counting_identities_hold(g: &LabelledGraph) -> bool {
    let b = g.betti() as i64;
    let t = g.terminal_count() as i64;
    let ds: Vec<i64> = g.vertices().map(|v| g.valence(v) as i64 - 2).collect();
    2 * b == 2 + ds.iter().sum::<i64>()
        && 2 * (b + t) == 2 + ds.iter().map(|d| d.abs()).sum::<i64>()
        && 2 * b + t == 2 + ds.iter().map(|&d| d.max(0)).sum::<i64>()
}

fn verdict(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// Minimal plateau that is 2-totally unfolded, whose boundary is a single
/// dart, and that dart has exactly two lifts.
fn is_bad_plateau(m: &AdmissibleMap, p: &MinimalPlateau) -> bool {
    if !p.primes.contains(&2) {
        return false;
    }
    let boundary = p.plateau.boundary(m.target());
    if boundary.len() != 1 {
        return false;
    }
    let e = boundary[0];
    let lifts: usize = m
        .preimages(m.target().origin(e))
        .iter()
        .map(|&x| m.lifts_at(x, e).len())
        .sum();
    lifts == 2
}

/// Evaluates every counting identity and inequality on `m`.
///
/// Checks needing a reduced target (`keyg`, `delt2`, `deltf`) are skipped
/// otherwise; failures are reported, not raised.
pub fn check_inequalities(m: &AdmissibleMap) -> Result<AuditReport> {
    require(m)?;
    let (s, t) = (m.source(), m.target());
    s.require_connected()?;
    t.require_connected()?;
    let classification = classify(m)?;
    let bad = bad_vertices(m)?;
    let minimal = minimal_plateaux(m)?;
    let bad_plateaux = minimal.iter().filter(|p| is_bad_plateau(m, p)).count();
    let q = Quantities {
        beta: t.betti(),
        t: t.terminal_count(),
        t_good: t.terminal_count() - bad.len(),
        c: minimal_plateau_cover(m)?,
        c_good: minimal.len() - bad_plateaux,
        mu: mu(t)?,
        beta_bar: s.betti(),
        t_bar: s.terminal_count(),
        mu_bar: mu(s)?,
        bad_vertices: bad.len(),
        bad_plateaux,
    };
    let reduced = t.is_reduced();
    let mut checks = Vec::new();
    let mut push = |name: &'static str, status: CheckStatus, detail: String| {
        checks.push(Check {
            name,
            status,
            detail,
        })
    };
    let lhs_bt = q.beta + q.t;
    let rhs_bt = q.beta_bar + q.t_bar;

    push(
        "simp",
        verdict(counting_identities_hold(s) && counting_identities_hold(t)),
        "valence identities on source and target".into(),
    );
    push(
        "simp2",
        verdict(q.beta <= q.beta_bar && 2 * q.beta + q.t <= 2 * q.beta_bar + q.t_bar),
        format!(
            "beta={}<=beta_bar={} and 2beta+t={}<=2beta_bar+t_bar={}",
            q.beta,
            q.beta_bar,
            2 * q.beta + q.t,
            2 * q.beta_bar + q.t_bar
        ),
    );

    let deltas = vertex_deltas(m);
    let sum: i64 = deltas.iter().sum();
    let expected = 2 * (rhs_bt as i64 - lhs_bt as i64);
    let bad_match = t
        .vertices()
        .all(|v| (deltas[v.0] < 0) == bad.contains(&v) && deltas[v.0] >= -1);
    push(
        "delta-sum",
        verdict(sum == expected && bad_match),
        format!("2*sum(delta)={sum} expected={expected}"),
    );

    let special = matches!(
        classification.kind,
        MapKind::Accordion { .. } | MapKind::BranchedTwoCoverOfTree
    );
    let bt_ok = if special {
        lhs_bt == rhs_bt + 1
    } else {
        lhs_bt <= rhs_bt
    };
    push(
        "bt",
        verdict(bt_ok),
        format!(
            "beta+t={lhs_bt} beta_bar+t_bar={rhs_bt} kind={}",
            classification.kind
        ),
    );

    if let MapKind::Accordion { .. } = classification.kind {
        push(
            "accordion",
            verdict(rhs_bt == 1 && lhs_bt == 2),
            format!("beta_bar+t_bar={rhs_bt} beta+t={lhs_bt}"),
        );
    }

    let skip = |name: &str| format!("{name} needs a reduced target");
    if reduced {
        let l = q.beta + q.t_good + q.c_good;
        push(
            "delt2",
            verdict(l <= rhs_bt),
            format!("beta+t_g+c_g={l} beta_bar+t_bar={rhs_bt}"),
        );
        let l = q.beta + q.t + q.c;
        let r = rhs_bt + classification.exceptional as usize;
        push(
            "deltf",
            verdict(l <= r),
            format!(
                "beta+t+c={l} bound={r} exceptional={}",
                classification.exceptional
            ),
        );
        push(
            "keyg",
            verdict(q.beta_bar + q.mu_bar >= q.beta + q.mu),
            format!(
                "rank_bar={} rank={}",
                q.beta_bar + q.mu_bar,
                q.beta + q.mu
            ),
        );
    } else {
        push("delt2", CheckStatus::Skip, skip("delt2"));
        push("deltf", CheckStatus::Skip, skip("deltf"));
        push("keyg", CheckStatus::Skip, skip("keyg"));
    }

    let parity = parity_violation(m);
    push(
        "par",
        verdict(parity.is_none()),
        parity.unwrap_or_else(|| "preimage parity constant on 2-plateaux".into()),
    );

    let c = covering_conditions(m)?;
    push("cove", verdict(c.agree()), format!("{c:?}"));

    let uf = unfolding_violation(m)?;
    push(
        "uf",
        verdict(uf.is_none()),
        uf.unwrap_or_else(|| "every plateau lifts or is totally unfolded".into()),
    );

    let total = m.total_multiplicity();
    let conserved = t.edges().all(|e| {
        m.edge_preimages(e)
            .iter()
            .map(|&f| m.edge_mult(f))
            .sum::<u64>()
            == total
    });
    push(
        "edge-multiplicity",
        verdict(conserved),
        format!("total multiplicity {total}"),
    );

    Ok(AuditReport {
        quantities: q,
        classification,
        checks,
    })
}

/// First violation of: preimage counts have constant parity over the vertices
/// and contained edges of each 2-plateau; over a proper 2-totally unfolded
/// plateau every preimage multiplicity is even.
pub fn parity_violation(m: &AdmissibleMap) -> Option<String> {
    let t = m.target();
    for p in all_p_plateaux(t, 2).expect("2 is prime") {
        let mut counts = p
            .vertices
            .iter()
            .map(|&v| m.preimages(v).len())
            .chain(p.edges.iter().map(|&e| m.edge_preimages(e).len()));
        let first = counts.next().expect("nonempty") % 2;
        if counts.any(|n| n % 2 != first) {
            return Some(format!("preimage parity varies on {}", p.describe(t)));
        }
        if p.is_proper() && totally_unfolded(m, &p).unwrap_or(false) {
            let odd_vertex = p
                .vertices
                .iter()
                .flat_map(|&v| m.preimages(v))
                .any(|x| m.vertex_mult(x) % 2 == 1);
            let odd_edge = p
                .edges
                .iter()
                .flat_map(|&e| m.edge_preimages(e))
                .any(|f| m.edge_mult(f) % 2 == 1);
            if odd_vertex || odd_edge {
                return Some(format!(
                    "odd multiplicity over 2-totally unfolded {}",
                    p.describe(t)
                ));
            }
        }
    }
    None
}

/// First proper p-plateau such that no component of its preimage is a
/// p-plateau and yet it is not p-totally unfolded.
pub fn unfolding_violation(m: &AdmissibleMap) -> Result<Option<String>> {
    let (s, t) = (m.source(), m.target());
    for p in label_primes(t) {
        for pl in crate::plateau::plateaux_for_prime(t, p)? {
            let keep: Vec<VertexId> = s
                .vertices()
                .filter(|&x| pl.contains_vertex(m.morphism.vertex(x)))
                .collect();
            let mut sub = LabelledGraph::new();
            let mut index = vec![None; s.vertex_count()];
            for &x in &keep {
                index[x.0] = Some(sub.add_vertex(s.vertex_name(x))?);
            }
            let lifted: Vec<_> = s
                .edges()
                .filter(|&f| pl.contains_edge(m.morphism.dart_map[f.0].edge))
                .collect();
            for &f in &lifted {
                let [a, b] = s.endpoints(f);
                sub.add_edge(s.edge_name(f), index[a.0].unwrap(), index[b.0].unwrap(), 1, 1)?;
            }
            let lifts_to_plateau = sub.components().into_iter().any(|comp| {
                let vs: Vec<VertexId> = comp.iter().map(|&c| keep[c.0]).collect();
                let es = lifted
                    .iter()
                    .copied()
                    .filter(|&f| vs.contains(&s.endpoints(f)[0]))
                    .collect();
                Plateau::checked(s, p, vs, es).is_ok()
            });
            if !lifts_to_plateau && !totally_unfolded(m, &pl)? {
                return Ok(Some(format!(
                    "no preimage component of {} is a plateau, yet it is not totally unfolded",
                    pl.describe(t)
                )));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{branched_cover, voltage_cover};
    use crate::fixtures::*;
    use crate::plateau::plateaux_for_prime;

    #[test]
    fn index_two_map_analysis() {
        let m = lollipop_index_two();
        let t = m.target();
        assert_eq!(bad_vertices(&m).unwrap(), vec![t.vertex_id("u").unwrap()]);
        let minimal = minimal_plateaux(&m).unwrap();
        assert_eq!(minimal.len(), 1);
        assert_eq!(minimal[0].plateau.vertices, vec![t.vertex_id("w").unwrap()]);
        assert_eq!(minimal_plateau_cover(&m).unwrap(), 1);
        assert!(totally_unfolded(&m, &minimal[0].plateau).unwrap());
        let c = classify(&m).unwrap();
        assert!(c.exceptional);
        assert!(matches!(c.kind, MapKind::GeneralizedBranched { ref branching_plateaux } if branching_plateaux.len() == 1));
        let report = check_inequalities(&m).unwrap();
        assert!(report.passed(), "{report:?}");
        let q = &report.quantities;
        assert_eq!((q.beta, q.t, q.c, q.beta_bar, q.t_bar), (1, 1, 1, 2, 0));
        assert_eq!(q.bad_plateaux, 1);
    }

    #[test]
    fn identity_map_analysis() {
        let g = path_abc(5);
        let m = AdmissibleMap::identity(&g);
        assert!(bad_vertices(&m).unwrap().is_empty());
        assert!(minimal_plateaux(&m).unwrap().is_empty());
        assert_eq!(minimal_plateau_cover(&m).unwrap(), 0);
        for p in all_plateaux(&g).proper_plateaux {
            assert!(!totally_unfolded(&m, &p).unwrap());
        }
        assert_eq!(classify(&m).unwrap().kind, MapKind::Ordinary);
        assert!(check_inequalities(&m).unwrap().passed());
    }

    #[test]
    fn voltage_cover_is_ordinary() {
        let m = voltage_cover(&bs(2, 3), 2, &[vec![1, 0]]).unwrap();
        assert!(bad_vertices(&m).unwrap().is_empty());
        assert_eq!(classify(&m).unwrap().kind, MapKind::Ordinary);
        assert!(check_inequalities(&m).unwrap().passed());
    }

    #[test]
    fn branched_cover_unfolds_its_plateau() {
        let g = triangle_abc();
        for p in all_plateaux(&g).proper_plateaux {
            let m = branched_cover(&g, &p).unwrap();
            assert!(totally_unfolded(&m, &p).unwrap());
            assert!(check_inequalities(&m).unwrap().passed());
        }
    }

    #[test]
    fn segment_double_covers() {
        // interval a – b with labels 2, 2: branched over both ends
        let mut g = LabelledGraph::new();
        g.add_vertex("a").unwrap();
        g.add_vertex("b").unwrap();
        g.add_edge_between("e", "a", "b", 2, 2).unwrap();
        let pa = plateaux_for_prime(&g, 2).unwrap();
        assert_eq!(pa.len(), 2);
        let m = branched_cover(&g, &pa[0]).unwrap();
        // one preimage over a, two over b: not yet two-to-one over the ends
        assert_eq!(classify(&m).unwrap().kind, MapKind::Ordinary);
        let report = check_inequalities(&m).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn accordion_and_branched_segment() {
        // circle of 2n edges folded onto a segment a – b labelled 2, 2
        for n in 1..4usize {
            let mut target = LabelledGraph::new();
            target.add_vertex("a").unwrap();
            target.add_vertex("b").unwrap();
            target.add_edge_between("e", "a", "b", 2, 2).unwrap();
            let mut src = LabelledGraph::new();
            let mut vmap = Vec::new();
            for i in 0..2 * n {
                src.add_vertex(format!("x{i}")).unwrap();
                vmap.push(VertexId(i % 2));
            }
            let mut dmap = Vec::new();
            for i in 0..2 * n {
                let (o, w) = (i, (i + 1) % (2 * n));
                src.add_edge(format!("f{i}"), VertexId(o), VertexId(w), 1, 1)
                    .unwrap();
                dmap.push(if i % 2 == 0 {
                    crate::graph::Dart::new(crate::graph::EdgeId(0), 0)
                } else {
                    crate::graph::Dart::new(crate::graph::EdgeId(0), 1)
                });
            }
            let morphism =
                crate::covering::GraphMorphism::new(src, target, vmap, dmap).unwrap();
            let m = AdmissibleMap::new(
                morphism,
                vec![2; 2 * n],
                vec![1; 2 * n],
            )
            .unwrap();
            let kind = classify(&m).unwrap().kind;
            if n == 1 {
                assert_eq!(kind, MapKind::BranchedTwoCoverOfTree);
            } else {
                assert_eq!(kind, MapKind::Accordion { size: n });
            }
            let report = check_inequalities(&m).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.check("bt").unwrap().status, CheckStatus::Pass);
        }
    }
}
