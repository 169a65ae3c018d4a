//! Admissible maps between labelled graphs.
//!
//! An admissible map `π: Γ̄ → Γ` is a graph morphism with a positive
//! multiplicity on every source vertex and edge such that, at every source
//! vertex `x` over `v` and every dart `e` at `v`, with `k = m_x ∧ |λ_e|`,
//! exactly `k` lifts of `e` start at `x`, each labelled `λ_e / k` and of
//! multiplicity `m_x / k`; the total multiplicity over every target vertex
//! must be the same.

mod construct;

pub use construct::{
    branched_cover, branched_cover_over, extract_proper_plateau, orientation_double_cover, plateau_free_cover,
    voltage_cover, DoubleCover, Permutation,
};

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::gcd_mult;
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, LabelledGraph, VertexId};

/// A graph morphism: a vertex map and, for every source edge, the image of
/// its side-0 dart. Reversal is respected by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    pub source: LabelledGraph,
    pub target: LabelledGraph,
    pub vertex_map: Vec<VertexId>,
    pub dart_map: Vec<Dart>,
}

impl GraphMorphism {
    /// Checks sizes, ranges and `o(π(ē)) = π(o(ē))` for both darts of every
    /// edge.
    pub fn new(
        source: LabelledGraph,
        target: LabelledGraph,
        vertex_map: Vec<VertexId>,
        dart_map: Vec<Dart>,
    ) -> Result<Self> {
        let m = GraphMorphism {
            source,
            target,
            vertex_map,
            dart_map,
        };
        m.check_incidence()?;
        Ok(m)
    }

    pub fn identity(g: &LabelledGraph) -> Self {
        GraphMorphism {
            source: g.clone(),
            target: g.clone(),
            vertex_map: g.vertices().collect(),
            dart_map: g.edges().map(Dart::forward).collect(),
        }
    }

    pub fn check_incidence(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.vertex_map.len() != s.vertex_count() || self.dart_map.len() != s.edge_count() {
            return Err(Error::Incidence("map sizes differ from the source".into()));
        }
        if let Some(v) = self.vertex_map.iter().find(|v| !t.contains_vertex(**v)) {
            return Err(Error::Incidence(format!("image vertex {v} not in target")));
        }
        for e in s.edges() {
            let d = self.dart_map[e.0];
            if !t.contains_edge(d.edge) || d.side > 1 {
                return Err(Error::Incidence(format!(
                    "image of edge {} not in target",
                    s.edge_name(e)
                )));
            }
            for side in 0..2 {
                let sd = Dart::new(e, side);
                if t.origin(self.image(sd)) != self.vertex_map[s.origin(sd).0] {
                    return Err(Error::Incidence(format!(
                        "edge {} does not map to an edge at the image of {}",
                        s.edge_name(e),
                        s.vertex_name(s.origin(sd))
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertex(&self, x: VertexId) -> VertexId {
        self.vertex_map[x.0]
    }

    pub fn image(&self, d: Dart) -> Dart {
        let f = self.dart_map[d.edge.0];
        if d.side == 0 {
            f
        } else {
            f.reverse()
        }
    }
}

/// Outcome of [`verify_admissible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// The underlying morphism does not respect incidence.
    Incidence(String),
    /// The morphism is fine but condition (*) or the total multiplicity
    /// fails; the message names the first violated site.
    Condition(String),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleMap {
    pub morphism: GraphMorphism,
    /// `m_x` per source vertex.
    pub vertex_multiplicity: Vec<u64>,
    /// `m_ē` per source edge.
    pub edge_multiplicity: Vec<u64>,
}

impl AdmissibleMap {
    /// Builds the map and checks that it is admissible.
    pub fn new(
        morphism: GraphMorphism,
        vertex_multiplicity: Vec<u64>,
        edge_multiplicity: Vec<u64>,
    ) -> Result<Self> {
        let m = Self::from_parts(morphism, vertex_multiplicity, edge_multiplicity);
        match verify_admissible(&m) {
            Admissibility::Admissible => Ok(m),
            Admissibility::Incidence(s) => Err(Error::Incidence(s)),
            Admissibility::Condition(s) => Err(Error::NotAdmissible(s)),
        }
    }

    /// Assembles a map without any check; see [`verify_admissible`].
    pub fn from_parts(
        morphism: GraphMorphism,
        vertex_multiplicity: Vec<u64>,
        edge_multiplicity: Vec<u64>,
    ) -> Self {
        AdmissibleMap {
            morphism,
            vertex_multiplicity,
            edge_multiplicity,
        }
    }

    pub fn identity(g: &LabelledGraph) -> Self {
        AdmissibleMap {
            morphism: GraphMorphism::identity(g),
            vertex_multiplicity: vec![1; g.vertex_count()],
            edge_multiplicity: vec![1; g.edge_count()],
        }
    }

    pub fn source(&self) -> &LabelledGraph {
        &self.morphism.source
    }

    pub fn target(&self) -> &LabelledGraph {
        &self.morphism.target
    }

    pub fn vertex_mult(&self, x: VertexId) -> u64 {
        self.vertex_multiplicity[x.0]
    }

    pub fn edge_mult(&self, e: EdgeId) -> u64 {
        self.edge_multiplicity[e.0]
    }

    /// Source vertices over `v`, in order.
    pub fn preimages(&self, v: VertexId) -> Vec<VertexId> {
        self.source()
            .vertices()
            .filter(|&x| self.morphism.vertex(x) == v)
            .collect()
    }

    /// Source edges over `e`, in order.
    pub fn edge_preimages(&self, e: EdgeId) -> Vec<EdgeId> {
        self.source()
            .edges()
            .filter(|&f| self.morphism.dart_map[f.0].edge == e)
            .collect()
    }

    /// Source darts at `x` mapped onto the target dart `e`.
    pub fn lifts_at(&self, x: VertexId, e: Dart) -> Vec<Dart> {
        self.source()
            .darts_at(x)
            .iter()
            .copied()
            .filter(|&d| self.morphism.image(d) == e)
            .collect()
    }

    /// `k_{x,e} = m_x ∧ |λ_e|`.
    pub fn local_gcd(&self, x: VertexId, e: Dart) -> u64 {
        gcd_mult(self.vertex_mult(x), self.target().label(e))
    }

    /// Sum of multiplicities over the preimages of the first target vertex.
    pub fn total_multiplicity(&self) -> u64 {
        self.preimages(VertexId(0))
            .iter()
            .map(|&x| self.vertex_mult(x))
            .sum()
    }

    /// The restriction to the source component containing `x`.
    pub fn restrict_to_component(&self, x: VertexId) -> AdmissibleMap {
        let (comp, _) = self.source().component_map();
        let keep: Vec<VertexId> = self
            .source()
            .vertices()
            .filter(|v| comp[v.0] == comp[x.0])
            .collect();
        let (sub, old_v, old_e) = self.source().induced(&keep);
        AdmissibleMap {
            morphism: GraphMorphism {
                source: sub,
                target: self.target().clone(),
                vertex_map: old_v.iter().map(|&v| self.morphism.vertex(v)).collect(),
                dart_map: old_e.iter().map(|&e| self.morphism.dart_map[e.0]).collect(),
            },
            vertex_multiplicity: old_v.iter().map(|&v| self.vertex_mult(v)).collect(),
            edge_multiplicity: old_e.iter().map(|&e| self.edge_mult(e)).collect(),
        }
    }

    /// One restricted map per source component, ordered by smallest vertex.
    pub fn components(&self) -> Vec<AdmissibleMap> {
        self.source()
            .components()
            .iter()
            .map(|c| self.restrict_to_component(c[0]))
            .collect()
    }
}

/// Checks incidence, condition (*) at every source vertex and target dart (in
/// declaration order), and constancy of the total multiplicity.
pub fn verify_admissible(m: &AdmissibleMap) -> Admissibility {
    if let Err(e) = m.morphism.check_incidence() {
        return Admissibility::Incidence(e.to_string());
    }
    let (s, t) = (m.source(), m.target());
    if m.vertex_multiplicity.len() != s.vertex_count() || m.edge_multiplicity.len() != s.edge_count()
    {
        return Admissibility::Condition("multiplicity lists differ in size from the source".into());
    }
    if let Some(x) = s.vertices().find(|&x| m.vertex_mult(x) == 0) {
        return Admissibility::Condition(format!("vertex {} has multiplicity 0", s.vertex_name(x)));
    }
    if let Some(e) = s.edges().find(|&e| m.edge_mult(e) == 0) {
        return Admissibility::Condition(format!("edge {} has multiplicity 0", s.edge_name(e)));
    }
    for x in s.vertices() {
        let v = m.morphism.vertex(x);
        let mx = m.vertex_mult(x);
        for &e in t.darts_at(v) {
            let k = m.local_gcd(x, e);
            let lifts = m.lifts_at(x, e);
            let site = || {
                format!(
                    "vertex {}, edge {}{}",
                    s.vertex_name(x),
                    if e.side == 1 { "~" } else { "" },
                    t.edge_name(e.edge)
                )
            };
            if lifts.len() as u64 != k {
                return Admissibility::Condition(format!(
                    "{}: expected {} lifts, found {}",
                    site(),
                    k,
                    lifts.len()
                ));
            }
            let want = divide_label(t.label(e), k);
            for d in lifts {
                if s.label(d) != &want {
                    return Admissibility::Condition(format!(
                        "{}: lift {} has label {}, expected {}",
                        site(),
                        s.edge_name(d.edge),
                        s.label(d),
                        want
                    ));
                }
                if m.edge_mult(d.edge) != mx / k {
                    return Admissibility::Condition(format!(
                        "{}: lift {} has multiplicity {}, expected {}",
                        site(),
                        s.edge_name(d.edge),
                        m.edge_mult(d.edge),
                        mx / k
                    ));
                }
            }
        }
    }
    let mut totals = vec![0u64; t.vertex_count()];
    for x in s.vertices() {
        let slot = &mut totals[m.morphism.vertex(x).0];
        *slot = slot.saturating_add(m.vertex_mult(x));
    }
    if let Some(v) = t.vertices().find(|v| totals[v.0] != totals[0]) {
        return Admissibility::Condition(format!(
            "total multiplicity {} over {} differs from {} over {}",
            totals[v.0],
            t.vertex_name(v),
            totals[0],
            t.vertex_name(VertexId(0))
        ));
    }
    Admissibility::Admissible
}

fn require_admissible(m: &AdmissibleMap) -> Result<()> {
    match verify_admissible(m) {
        Admissibility::Admissible => Ok(()),
        Admissibility::Incidence(s) => Err(Error::Incidence(s)),
        Admissibility::Condition(s) => Err(Error::NotAdmissible(s)),
    }
}

/// `outer ∘ inner`, with multiplicities `m_inner · (m_outer ∘ π_inner)`.
pub fn compose(outer: &AdmissibleMap, inner: &AdmissibleMap) -> Result<AdmissibleMap> {
    if inner.target() != outer.source() {
        return Err(Error::GraphMismatch(
            "target of the inner map is not the source of the outer map".into(),
        ));
    }
    let s = inner.source();
    let product = |a: u64, b: u64| {
        a.checked_mul(b)
            .ok_or_else(|| Error::Overflow("multiplicity exceeds 64 bits".into()))
    };
    let vertex_multiplicity = s
        .vertices()
        .map(|x| product(inner.vertex_mult(x), outer.vertex_mult(inner.morphism.vertex(x))))
        .collect::<Result<Vec<_>>>()?;
    let edge_multiplicity = s
        .edges()
        .map(|e| {
            let mid = inner.morphism.dart_map[e.0].edge;
            product(inner.edge_mult(e), outer.edge_mult(mid))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism = GraphMorphism {
        source: s.clone(),
        target: outer.target().clone(),
        vertex_map: s
            .vertices()
            .map(|x| outer.morphism.vertex(inner.morphism.vertex(x)))
            .collect(),
        dart_map: s
            .edges()
            .map(|e| outer.morphism.image(inner.morphism.dart_map[e.0]))
            .collect(),
    };
    let m = AdmissibleMap::from_parts(morphism, vertex_multiplicity, edge_multiplicity);
    match verify_admissible(&m) {
        Admissibility::Admissible => Ok(m),
        other => Err(Error::Invariant(format!("composite is not admissible: {other:?}"))),
    }
}

/// The four equivalent descriptions of a topological covering, evaluated
/// independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoveringConditions {
    /// Every star of the source maps bijectively onto the star below.
    pub local_bijection: bool,
    /// Every `k_{x,e}` equals 1.
    pub unit_gcds: bool,
    /// Every source label equals the label below it.
    pub preserves_labels: bool,
    /// Vertex and edge multiplicities are constant on each source component.
    pub constant_multiplicity: bool,
}

impl CoveringConditions {
    pub fn agree(&self) -> bool {
        let v = self.local_bijection;
        self.unit_gcds == v && self.preserves_labels == v && self.constant_multiplicity == v
    }
}

pub fn covering_conditions(m: &AdmissibleMap) -> Result<CoveringConditions> {
    require_admissible(m)?;
    let (s, t) = (m.source(), m.target());
    let local_bijection = s.vertices().all(|x| {
        let v = m.morphism.vertex(x);
        s.valence(x) == t.valence(v)
            && t.darts_at(v).iter().all(|&e| m.lifts_at(x, e).len() == 1)
    });
    let unit_gcds = s
        .vertices()
        .all(|x| t.darts_at(m.morphism.vertex(x)).iter().all(|&e| m.local_gcd(x, e) == 1));
    let preserves_labels = s.darts().all(|d| s.label(d) == t.label(m.morphism.image(d)));
    let (comp, count) = s.component_map();
    let mut value: Vec<Option<u64>> = vec![None; count];
    let mut constant_multiplicity = true;
    let items = s
        .vertices()
        .map(|x| (comp[x.0], m.vertex_mult(x)))
        .chain(s.edges().map(|e| (comp[s.endpoints(e)[0].0], m.edge_mult(e))));
    for (c, mult) in items {
        match value[c] {
            None => value[c] = Some(mult),
            Some(w) if w != mult => constant_multiplicity = false,
            _ => {}
        }
    }
    Ok(CoveringConditions {
        local_bijection,
        unit_gcds,
        preserves_labels,
        constant_multiplicity,
    })
}

/// Whether `m` is a topological covering. Fails with an invariant error if the
/// four characterizations disagree.
pub fn is_topological_covering(m: &AdmissibleMap) -> Result<bool> {
    let c = covering_conditions(m)?;
    if !c.agree() {
        return Err(Error::Invariant(format!(
            "covering characterizations disagree: {c:?}"
        )));
    }
    Ok(c.local_bijection)
}

/// Allocates identifiers that do not clash with earlier ones.
#[derive(Default)]
pub(crate) struct Namer {
    used: HashSet<String>,
}

impl Namer {
    pub(crate) fn fresh(&mut self, base: String) -> String {
        let mut name = base;
        while self.used.contains(&name) {
            name.push('\'');
        }
        self.used.insert(name.clone());
        name
    }
}

/// `λ / k` keeping the sign of λ (`k` divides λ).
pub(crate) fn divide_label(label: &BigInt, k: u64) -> BigInt {
    debug_assert!((label % k).is_zero());
    label / BigInt::from(k)
}
