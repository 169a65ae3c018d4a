//! Seeded random graphs and admissible maps.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`, so a
//! configuration determines its instance on every platform.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covering::{branched_cover, branched_cover_over, compose, plateau_free_cover, voltage_cover, AdmissibleMap};
use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, VertexId};
use crate::plateau::{label_primes, plateaux_for_prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecipeStep {
    /// Branched cover over a random proper plateau; a degree-2 voltage cover
    /// when there is none.
    Branched,
    /// Connected component of a cover with random permutation voltages.
    Voltage(usize),
    /// Branched cover over a random maximal family of disjoint proper
    /// plateaux for one prime; a degree-2 voltage cover when there is none.
    Fold,
    PlateauFree,
}

impl fmt::Display for RecipeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecipeStep::Branched => write!(f, "branched"),
            RecipeStep::Voltage(n) => write!(f, "voltage({n})"),
            RecipeStep::PlateauFree => write!(f, "plateau-free"),
            RecipeStep::Fold => write!(f, "fold"),
        }
    }
}

impl FromStr for RecipeStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            reason: format!("unknown recipe step `{s}`"),
        };
        match s {
            "branched" => Ok(RecipeStep::Branched),
            "plateau-free" => Ok(RecipeStep::PlateauFree),
            "fold" => Ok(RecipeStep::Fold),
            _ => {
                let n = s
                    .strip_prefix("voltage(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(bad)?
                    .parse::<usize>()
                    .map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Ok(RecipeStep::Voltage(n))
            }
        }
    }
}

/// Parses a comma-separated recipe such as `branched,compose,voltage(2)`.
/// Consecutive steps are always composed, so `compose` entries are accepted
/// and skipped.
pub fn parse_recipe(s: &str) -> Result<Vec<RecipeStep>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty() && *t != "compose")
        .map(str::parse)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_label: u64,
    /// Only generate trees.
    pub trees: bool,
    pub recipe: Vec<RecipeStep>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 1,
            max_vertices: 4,
            max_edges: 5,
            max_label: 12,
            trees: false,
            recipe: vec![RecipeStep::Branched],
        }
    }
}

fn random_label(rng: &mut ChaCha8Rng, max: u64) -> i64 {
    let max = max.max(1) as i64;
    let m = rng.random_range(1..=max);
    if rng.random_bool(0.5) {
        m
    } else {
        -m
    }
}

fn raw_graph(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> LabelledGraph {
    let n = rng.random_range(1..=cfg.max_vertices.max(1));
    let lo = n.saturating_sub(1).max(1);
    let m = if cfg.trees {
        n - 1
    } else {
        rng.random_range(lo..=cfg.max_edges.max(lo))
    };
    let mut g = LabelledGraph::new();
    for i in 0..n {
        g.add_vertex(format!("v{i}")).expect("fresh");
    }
    for i in 0..m {
        // the first n-1 edges form a random spanning tree
        let (a, b) = if i + 1 < n {
            (rng.random_range(0..=i), i + 1)
        } else {
            (rng.random_range(0..n), rng.random_range(0..n))
        };
        let (a, b) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
        let l0 = random_label(rng, cfg.max_label);
        let l1 = random_label(rng, cfg.max_label);
        g.add_edge(format!("e{i}"), VertexId(a), VertexId(b), l0, l1)
            .expect("fresh");
    }
    g
}

fn graph_with(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> LabelledGraph {
    loop {
        // reduction can multiply labels, so the bound is checked afterwards
        let g = raw_graph(cfg, rng).reduce().expect("connected by construction");
        let bound = num_bigint::BigUint::from(cfg.max_label);
        if g.edge_count() > 0 && g.darts().all(|d| g.label(d).magnitude() <= &bound) {
            return g;
        }
    }
}

/// A connected reduced graph with at least one edge, within the bounds of
/// `cfg`.
pub fn generate_graph(cfg: &GeneratorConfig) -> LabelledGraph {
    graph_with(cfg, &mut ChaCha8Rng::seed_from_u64(cfg.seed))
}

fn shuffled(g: &LabelledGraph, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    g.edges()
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect()
}

/// One uniformly random permutation of `0..n` per edge of `g`.
pub fn random_permutations(g: &LabelledGraph, n: usize, seed: u64) -> Vec<Vec<usize>> {
    shuffled(g, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A random permutation-voltage cover, redrawn a few times in the hope of a
/// connected one before falling back to the component of the first vertex.
fn random_voltage(g: &LabelledGraph, n: usize, rng: &mut ChaCha8Rng) -> Result<AdmissibleMap> {
    let mut m = None;
    for _ in 0..16 {
        let cover = voltage_cover(g, n, &shuffled(g, n, rng))?;
        if cover.source().is_connected() {
            return Ok(cover);
        }
        m = Some(cover);
    }
    Ok(m.expect("at least one attempt").restrict_to_component(VertexId(0)))
}

fn step(g: &LabelledGraph, s: RecipeStep, rng: &mut ChaCha8Rng) -> Result<AdmissibleMap> {
    match s {
        RecipeStep::Branched => {
            let mut candidates = Vec::new();
            for p in label_primes(g) {
                candidates.extend(plateaux_for_prime(g, p)?);
            }
            match candidates.choose(rng) {
                Some(plateau) => branched_cover(g, plateau),
                None => random_voltage(g, 2, rng),
            }
        }
        RecipeStep::Fold => {
            let mut primes = Vec::new();
            for p in label_primes(g) {
                let ps = plateaux_for_prime(g, p)?;
                if !ps.is_empty() {
                    primes.push(ps);
                }
            }
            let Some(ps) = primes.choose(rng) else {
                return random_voltage(g, 2, rng);
            };
            let mut ps = ps.clone();
            ps.shuffle(rng);
            let mut chosen: Vec<crate::plateau::Plateau> = Vec::new();
            for p in ps {
                if chosen
                    .iter()
                    .all(|c| c.vertices.iter().all(|v| !p.contains_vertex(*v)))
                {
                    chosen.push(p);
                }
            }
            branched_cover_over(g, &chosen)
        }
        RecipeStep::Voltage(n) => random_voltage(g, n, rng),
        RecipeStep::PlateauFree => plateau_free_cover(g),
    }
}

/// Generates a target with [`generate_graph`] and applies the recipe to it,
/// composing the steps. The result has a connected source.
pub fn generate_admissible_map(cfg: &GeneratorConfig) -> Result<AdmissibleMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let g = graph_with(cfg, &mut rng);
    let mut acc = AdmissibleMap::identity(&g);
    for &s in &cfg.recipe {
        let next = step(acc.source(), s, &mut rng)?;
        acc = compose(&acc, &next)?;
    }
    Ok(acc)
}
