//! Property suites over generated admissible maps.
//!
//! Instance `i` of a run uses seed `base + i` and a recipe picked from a fixed
//! rotation by that seed. Instances run in parallel; results come back in
//! instance order.

use std::fmt;

use rayon::prelude::*;

use crate::analysis::{check_inequalities, CheckStatus};
use crate::covering::{plateau_free_cover, verify_admissible, Admissibility};
use crate::error::{Error, Result};
use crate::generate::{generate_admissible_map, generate_graph, GeneratorConfig, RecipeStep};
use crate::plateau::has_proper_plateau;

pub const SUITES: &[&str] = &["keyg", "cove", "bt", "delt2", "deltf", "par", "papla", "all"];

/// Audit checks reported by each map suite.
fn checks_for(suite: &str) -> &'static [&'static str] {
    match suite {
        "keyg" => &["keyg", "simp2"],
        "cove" => &["cove", "edge-multiplicity"],
        "bt" => &["bt", "accordion", "simp", "delta-sum"],
        "delt2" => &["delt2"],
        "deltf" => &["deltf"],
        "par" => &["par", "uf"],
        _ => &[
            "simp",
            "simp2",
            "delta-sum",
            "bt",
            "accordion",
            "delt2",
            "deltf",
            "keyg",
            "par",
            "cove",
            "uf",
            "edge-multiplicity",
        ],
    }
}

/// Recipe rotation; the flag asks for a tree as target.
const ROTATION: [(&[RecipeStep], bool); 10] = {
    use RecipeStep::*;
    [
        (&[Branched], false),
        (&[Voltage(2)], false),
        (&[Voltage(3)], false),
        (&[Branched, Voltage(2)], false),
        (&[Voltage(2), Branched], false),
        (&[Branched, Branched], false),
        (&[PlateauFree], false),
        (&[Fold], false),
        (&[Fold], true),
        (&[Fold, Voltage(2)], true),
    ]
};

/// Generator settings for instance seed `seed` on top of `base`.
pub fn instance_config(base: &GeneratorConfig, seed: u64) -> GeneratorConfig {
    let (recipe, trees) = ROTATION[(seed % ROTATION.len() as u64) as usize];
    GeneratorConfig {
        seed,
        recipe: recipe.to_vec(),
        trees: trees || base.trees,
        ..base.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub instance: usize,
    pub seed: u64,
    pub property: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub outcomes: Vec<Outcome>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, property: &str, status: Status) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.property == property && o.status == status)
            .count()
    }

    /// One `key=value` line per outcome.
    pub fn lines(&self) -> impl Iterator<Item = String> + '_ {
        self.outcomes.iter().map(move |o| {
            format!(
                "suite={} instance={} seed={} property={} status={} detail={}",
                self.suite, o.instance, o.seed, o.property, o.status, o.detail
            )
        })
    }
}

fn map_outcomes(suite: &str, cfg: &GeneratorConfig) -> Vec<(String, Status, String)> {
    let recipe: Vec<String> = cfg.recipe.iter().map(ToString::to_string).collect();
    let recipe = recipe.join(",");
    let m = match generate_admissible_map(cfg) {
        Ok(m) => m,
        Err(e) => return vec![("generate".into(), Status::Fail, format!("recipe={recipe} {e}"))],
    };
    let mut out = Vec::new();
    let adm = verify_admissible(&m);
    out.push((
        "admissible".into(),
        if adm == Admissibility::Admissible { Status::Pass } else { Status::Fail },
        format!("recipe={recipe} {adm:?}"),
    ));
    let report = match check_inequalities(&m) {
        Ok(r) => r,
        Err(e) => {
            out.push(("audit".into(), Status::Fail, e.to_string()));
            return out;
        }
    };
    for name in checks_for(suite) {
        if let Some(c) = report.check(name) {
            let status = match c.status {
                CheckStatus::Pass => Status::Pass,
                CheckStatus::Fail => Status::Fail,
                CheckStatus::Skip => Status::Skip,
            };
            out.push((c.name.to_string(), status, c.detail.replace(' ', ",")));
        }
    }
    out
}

fn plateau_free_outcomes(cfg: &GeneratorConfig) -> Vec<(String, Status, String)> {
    let g = generate_graph(cfg);
    let m = match plateau_free_cover(&g) {
        Ok(m) => m,
        Err(e) => return vec![("plateau-free".into(), Status::Fail, e.to_string())],
    };
    let adm = verify_admissible(&m) == Admissibility::Admissible;
    let connected = m.source().is_connected();
    let free = !has_proper_plateau(m.source());
    let ok = adm && connected && free;
    vec![(
        "plateau-free".into(),
        if ok { Status::Pass } else { Status::Fail },
        format!(
            "admissible={adm},connected={connected},plateau_free={free},degree={}",
            m.total_multiplicity()
        ),
    )]
}

/// Runs `count` instances of the named suite with seeds `base.seed`,
/// `base.seed + 1`, ….
pub fn run_suite(name: &str, base: &GeneratorConfig, count: usize) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let outcomes: Vec<Vec<Outcome>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let seed = base.seed.wrapping_add(i as u64);
            let cfg = instance_config(base, seed);
            let mut raw = Vec::new();
            if name != "papla" {
                raw.extend(map_outcomes(name, &cfg));
            }
            if name == "papla" || name == "all" {
                raw.extend(plateau_free_outcomes(&cfg));
            }
            raw.into_iter()
                .map(|(property, status, detail)| Outcome {
                    instance: i,
                    seed,
                    property,
                    status,
                    detail,
                })
                .collect()
        })
        .collect();
    Ok(SuiteReport {
        suite: name.to_string(),
        outcomes: outcomes.into_iter().flatten().collect(),
    })
}
