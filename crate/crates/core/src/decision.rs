//! Largeness and commensurability.

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::covering::{
    is_topological_covering, orientation_double_cover, voltage_cover, AdmissibleMap, DoubleCover,
    Permutation,
};
use crate::error::{Error, Result};
use crate::graph::{isomorphism, stable_refinement, GraphIsomorphism, LabelledGraph};
use crate::plateau::has_proper_plateau;

/// Whether the group has a finite-index subgroup mapping onto a free group of
/// rank 2.
///
/// After reduction: two or more independent cycles, or a tree, give a large
/// group; with one cycle, a circle is large exactly when the products of the
/// labels read in the two directions have a common factor, and any other
/// graph has a terminal vertex with a label other than ±1, hence a proper
/// plateau, and is large.
pub fn is_large(g: &LabelledGraph) -> Result<bool> {
    let r = g.reduce()?;
    if r.edge_count() == 0 {
        return Err(Error::CyclicGroup);
    }
    match r.betti() {
        1 if r.is_circle() => {
            let (x, y) = r.circle_products()?;
            Ok(!x.gcd(&y).is_one())
        }
        _ => Ok(true),
    }
}

/// Colour refinement of a graph with positive labels: two vertices get the
/// same colour exactly when the universal covers rooted at them agree.
pub fn universal_cover_coloring(g: &LabelledGraph) -> Result<Vec<usize>> {
    g.require_connected()?;
    if let Some(e) = g.edges().find(|&e| g.labels(e).iter().any(Signed::is_negative)) {
        return Err(Error::NegativeLabel(g.edge_name(e).to_string()));
    }
    Ok(stable_refinement(&[g]).pop().expect("one graph"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Commensurable,
    NotCommensurable,
    OutOfScope,
}

/// Two topological coverings with isomorphic sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub first: AdmissibleMap,
    pub second: AdmissibleMap,
    /// From `first.source()` to `second.source()`.
    pub isomorphism: GraphIsomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessStatus {
    NotRequested,
    Found(Box<Witness>),
    /// No common cover with both degrees at most the bound.
    NotFound { max_degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommensurabilityVerdict {
    pub answer: Answer,
    pub witness: WitnessStatus,
    /// Human-readable reason: the violated hypothesis, or the colour
    /// comparison.
    pub certificate: String,
    /// The reduced, sign-normalized graphs (after the orientation double
    /// cover where needed) on which the decision is made; witnesses cover
    /// these.
    pub prepared: Option<(LabelledGraph, LabelledGraph)>,
}

fn scope_violation(g: &LabelledGraph) -> Option<&'static str> {
    if !g.is_strongly_slide_free() {
        Some("not strongly slide-free")
    } else if has_proper_plateau(g) {
        Some("has a proper plateau")
    } else {
        None
    }
}

/// Passes to the orientation double cover when the modulus takes a negative
/// value, then makes every label positive.
fn prepare(g: &LabelledGraph) -> Result<LabelledGraph> {
    let base = match orientation_double_cover(g)? {
        DoubleCover::AlreadyPositive => g.clone(),
        DoubleCover::Cover(m) => m.source().clone(),
    };
    let n = base.normalize_signs()?;
    if n.darts().any(|d| n.label(d).is_negative()) {
        return Err(Error::Invariant("sign normalization left a negative label".into()));
    }
    Ok(n)
}

/// Decides whether two strongly slide-free, plateau-free GBS groups have
/// isomorphic finite-index subgroups.
///
/// Both graphs are reduced, checked to lie in scope, made orientable and
/// positive, and then compared through their joint colour refinement: they
/// have a common finite cover exactly when some colour occurs in both. With
/// `witness_max_degree`, connected topological covers of degree up to the
/// bound are searched for an isomorphic pair.
pub fn commensurable(
    g1: &LabelledGraph,
    g2: &LabelledGraph,
    witness_max_degree: Option<usize>,
) -> Result<CommensurabilityVerdict> {
    let r1 = g1.reduce()?;
    let r2 = g2.reduce()?;
    for (i, r) in [(1, &r1), (2, &r2)] {
        if let Some(why) = scope_violation(r) {
            return Ok(CommensurabilityVerdict {
                answer: Answer::OutOfScope,
                witness: WitnessStatus::NotRequested,
                certificate: format!("graph {i} {why}"),
                prepared: None,
            });
        }
    }
    let p1 = prepare(&r1)?;
    let p2 = prepare(&r2)?;
    let colors = stable_refinement(&[&p1, &p2]);
    let shared = colors[0].iter().find(|c| colors[1].contains(c)).copied();
    let Some(color) = shared else {
        return Ok(CommensurabilityVerdict {
            answer: Answer::NotCommensurable,
            witness: WitnessStatus::NotRequested,
            certificate: "stable colourings are disjoint".into(),
            prepared: Some((p1, p2)),
        });
    };
    let witness = match witness_max_degree {
        None => WitnessStatus::NotRequested,
        Some(d) => match find_witness(&p1, &p2, d)? {
            Some(w) => WitnessStatus::Found(Box::new(w)),
            None => WitnessStatus::NotFound { max_degree: d },
        },
    };
    Ok(CommensurabilityVerdict {
        answer: Answer::Commensurable,
        witness,
        certificate: format!("stable colour {color} occurs in both graphs"),
        prepared: Some((p1, p2)),
    })
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Upper bound on voltage assignments tried per graph and degree.
const MAX_ASSIGNMENTS: usize = 200_000;

/// Connected topological covers of `g` of degree `n`, obtained from voltage
/// assignments trivial on the spanning tree. Not deduplicated up to
/// isomorphism. Returns `None` if there are too many assignments to try.
pub fn connected_covers(g: &LabelledGraph, n: usize) -> Result<Option<Vec<AdmissibleMap>>> {
    let tree = g.maximal_subtree()?;
    let free: Vec<_> = g.edges().filter(|e| !tree.contains(e)).collect();
    let fact: usize = (1..=n).product();
    let mut total: usize = 1;
    for _ in &free {
        total = match total.checked_mul(fact) {
            Some(t) if t <= MAX_ASSIGNMENTS => t,
            _ => return Ok(None),
        };
    }
    let identity: Permutation = (0..n).collect();
    let mut choice: Vec<Permutation> = vec![identity.clone(); free.len()];
    let mut out = Vec::new();
    loop {
        let mut perms = vec![identity.clone(); g.edge_count()];
        for (e, p) in free.iter().zip(&choice) {
            perms[e.0] = p.clone();
        }
        let m = voltage_cover(g, n, &perms)?;
        if m.source().is_connected() {
            out.push(m);
        }
        // odometer over the free edges
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(Some(out));
            }
            if next_permutation(&mut choice[k]) {
                break;
            }
            choice[k] = identity.clone();
            k += 1;
        }
    }
}

/// Searches degree pairs `(n1, n2)` with matching vertex and edge counts, by
/// increasing `n1 + n2`, for isomorphic connected covers.
fn find_witness(g1: &LabelledGraph, g2: &LabelledGraph, max_degree: usize) -> Result<Option<Witness>> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for n1 in 1..=max_degree {
        for n2 in 1..=max_degree {
            if n1 * g1.vertex_count() == n2 * g2.vertex_count()
                && n1 * g1.edge_count() == n2 * g2.edge_count()
            {
                pairs.push((n1, n2));
            }
        }
    }
    pairs.sort_by_key(|&(a, b)| (a + b, a));
    for (n1, n2) in pairs {
        let (Some(c1), Some(c2)) = (connected_covers(g1, n1)?, connected_covers(g2, n2)?) else {
            continue;
        };
        for a in &c1 {
            for b in &c2 {
                if let Some(iso) = isomorphism(a.source(), b.source()) {
                    debug_assert!(is_topological_covering(a)? && is_topological_covering(b)?);
                    return Ok(Some(Witness {
                        first: a.clone(),
                        second: b.clone(),
                        isomorphism: iso,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn largeness_examples() {
        assert!(!is_large(&bs(2, 3)).unwrap());
        assert!(is_large(&bs(2, 4)).unwrap());
        assert!(is_large(&triangle_abc()).unwrap());
        assert!(is_large(&path_abcd()).unwrap());
        assert!(!is_large(&klein()).unwrap());
        let mut bare = LabelledGraph::new();
        bare.add_vertex("v").unwrap();
        assert_eq!(is_large(&bare), Err(Error::CyclicGroup));
    }

    #[test]
    fn coloring_examples() {
        assert_eq!(universal_cover_coloring(&bs(2, 3)).unwrap(), vec![0]);
        let c = universal_cover_coloring(&circle(&[(2, 3), (2, 3)])).unwrap();
        assert_eq!(c[0], c[1]);
        assert!(matches!(
            universal_cover_coloring(&bs(2, -3)),
            Err(Error::NegativeLabel(_))
        ));
    }

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
    }

    #[test]
    fn commensurability_triad() {
        let v = commensurable(&bs(2, 3), &circle(&[(2, 3), (2, 3)]), Some(3)).unwrap();
        assert_eq!(v.answer, Answer::Commensurable);
        let WitnessStatus::Found(w) = v.witness else {
            panic!("expected a witness");
        };
        assert_eq!(w.first.total_multiplicity(), 2);
        assert_eq!(w.second.total_multiplicity(), 1);
        let v = commensurable(&bs(2, 3), &bs(4, 9), Some(3)).unwrap();
        assert_eq!(v.answer, Answer::NotCommensurable);
        let v = commensurable(&bs(2, 4), &bs(2, 3), None).unwrap();
        assert_eq!(v.answer, Answer::OutOfScope);
    }

    #[test]
    fn orientation_is_handled() {
        // BS(2,-3) and BS(2,3) share the double cover with modulus 4/9
        let v = commensurable(&bs(2, -3), &bs(2, 3), Some(2)).unwrap();
        assert_eq!(v.answer, Answer::Commensurable);
        assert!(matches!(v.witness, WitnessStatus::Found(_)));
    }
}
