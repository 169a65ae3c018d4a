//! `gbs`: command-line access to the labelled-graph invariants, covering
//! constructions and property suites.
//!
//! Exit codes: 0 success or true, 1 false or negative verdict, 2 usage or
//! input error, 3 internal invariant failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gbs_core::analysis::{check_inequalities, classify, CheckStatus};
use gbs_core::covering::{
    branched_cover, compose, covering_conditions, extract_proper_plateau, plateau_free_cover,
    verify_admissible, voltage_cover, Admissibility, AdmissibleMap,
};
use gbs_core::decision::{commensurable, is_large, Answer, WitnessStatus};
use gbs_core::format::{emit_graph, emit_map, parse_automorphism, read_graph, read_map};
use gbs_core::generate::{parse_recipe, random_permutations, GeneratorConfig};
use gbs_core::plateau::{
    all_plateaux, generates, minimum_generating_vertices, mu, plateau_containing,
    plateaux_for_prime, rank,
};
use gbs_core::suite::run_suite;
use gbs_core::torus::{mapping_torus_graph, mapping_torus_rank, subdivide_inverted_edges};
use gbs_core::{Error, LabelledGraph};

#[derive(Parser)]
#[command(name = "gbs", version, about = "Invariants of generalized Baumslag–Solitar groups given by labelled graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of the group (Betti number plus plateau number)
    Rank { file: PathBuf },
    /// List the proper plateaux
    Plateaux {
        file: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Minimum number of vertices meeting every plateau
    Mu { file: PathBuf },
    /// Whether the given vertices, with the stable letters, generate
    Generates {
        file: PathBuf,
        /// Comma-separated vertex identifiers
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
    },
    /// Collapse edges with a ±1 label that are not loops
    Reduce { file: PathBuf },
    /// Make tree labels positive at the terminus and non-tree edges not doubly negative
    Normalize { file: PathBuf },
    /// Modulus on a basis of the cycle space
    Modulus { file: PathBuf },
    /// Whether the group is large
    Large { file: PathBuf },
    /// Decide commensurability of two strongly slide-free plateau-free groups
    Commensurable {
        first: PathBuf,
        second: PathBuf,
        /// Search for explicit common covers
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Admissible maps
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Labelled graph of the mapping torus of a finite-order graph automorphism
    ///
    /// The input is an automorphism of a graph, not an outer automorphism of a
    /// free group.
    MappingTorus {
        file: PathBuf,
        #[arg(long)]
        graph_only: bool,
    },
    /// Run a property suite over generated maps
    Suite {
        /// keyg, cove, bt, delt2, deltf, par, papla or all
        name: String,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// First seed (overridden by GBS_SEED)
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 5)]
        max_edges: usize,
        #[arg(long, default_value_t = 12)]
        max_label: u64,
        /// Only print failures and the summary
        #[arg(long)]
        quiet: bool,
    },
    /// Generate one admissible map from a recipe
    Generate {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated steps: branched, voltage(N), fold, plateau-free
        #[arg(long, default_value = "branched")]
        recipe: String,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Check admissibility and the covering conditions
    Verify { map: PathBuf },
    /// Branched cover over the plateau containing a vertex
    Branch {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        plateau_vertex: String,
        #[command(flatten)]
        out: Out,
    },
    /// Permutation-voltage cover with random permutations
    Voltage {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Overridden by GBS_SEED
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Cover without proper plateaux
    PlateauFree {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Compose two maps (either order of arguments)
    Compose {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// A proper plateau of the target recovered from a non-covering map
    ExtractPlateau { map: PathBuf },
    /// Accordion, branched 2-cover of a tree, or ordinary
    Classify { map: PathBuf },
    /// Evaluate the counting identities and inequalities
    Audit { map: PathBuf },
}

#[derive(Args)]
struct Out {
    /// Write PREFIX.graph, PREFIX.target.graph and PREFIX.map instead of
    /// printing
    #[arg(long, value_name = "PREFIX")]
    out: Option<PathBuf>,
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<bool, Failure>;

fn seed_override(seed: u64) -> Result<u64, Failure> {
    match std::env::var("GBS_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("GBS_SEED is not an integer: {s}"))),
        Err(_) => Ok(seed),
    }
}

fn names(g: &LabelledGraph, vs: &[gbs_core::VertexId]) -> String {
    vs.iter().map(|&v| g.vertex_name(v)).collect::<Vec<_>>().join(",")
}

/// Prints a map, or writes it with its graphs under `prefix`.
fn output_map(m: &AdmissibleMap, out: &Out) -> Result<(), Failure> {
    match &out.out {
        None => {
            print!("# source\n{}", emit_graph(m.source()));
            print!("# target\n{}", emit_graph(m.target()));
            print!("# map\n{}", emit_map(m, "source.graph", "target.graph"));
        }
        Some(prefix) => {
            let base = prefix
                .file_name()
                .ok_or_else(|| Failure::Usage("--out needs a file prefix".into()))?
                .to_string_lossy()
                .into_owned();
            let with = |ext: &str| -> PathBuf {
                let mut p = prefix.clone().into_os_string();
                p.push(ext);
                p.into()
            };
            let write = |path: PathBuf, text: String| -> Result<(), Failure> {
                std::fs::write(&path, text)
                    .map_err(|e| Failure::Core(Error::Io(format!("{}: {e}", path.display()))))
            };
            write(with(".graph"), emit_graph(m.source()))?;
            write(with(".target.graph"), emit_graph(m.target()))?;
            write(
                with(".map"),
                emit_map(m, &format!("{base}.graph"), &format!("{base}.target.graph")),
            )?;
            println!("wrote {}", with(".map").display());
        }
    }
    Ok(())
}

fn cover(cmd: CoverCommand) -> Outcome {
    match cmd {
        CoverCommand::Verify { map } => {
            let m = read_map(&map)?;
            match verify_admissible(&m) {
                Admissibility::Admissible => {
                    let c = covering_conditions(&m)?;
                    println!("admissible=true total_multiplicity={}", m.total_multiplicity());
                    println!(
                        "local_bijection={} unit_gcds={} preserves_labels={} constant_multiplicity={}",
                        c.local_bijection, c.unit_gcds, c.preserves_labels, c.constant_multiplicity
                    );
                    if !c.agree() {
                        return Err(Error::Invariant("covering conditions disagree".into()).into());
                    }
                    println!("topological_covering={}", c.local_bijection);
                    Ok(true)
                }
                Admissibility::Incidence(s) => {
                    println!("admissible=false reason=incidence detail={s}");
                    Ok(false)
                }
                Admissibility::Condition(s) => {
                    println!("admissible=false reason=condition detail={s}");
                    Ok(false)
                }
            }
        }
        CoverCommand::Branch {
            file,
            prime,
            plateau_vertex,
            out,
        } => {
            let g = read_graph(&file)?;
            let v = g.require_vertex(&plateau_vertex)?;
            let plateau = plateau_containing(&g, prime, v)?.ok_or_else(|| {
                Error::NotAPlateau(format!("no {prime}-plateau contains {plateau_vertex}"))
            })?;
            output_map(&branched_cover(&g, &plateau)?, &out)?;
            Ok(true)
        }
        CoverCommand::Voltage {
            file,
            degree,
            seed,
            out,
        } => {
            let g = read_graph(&file)?;
            let perms = random_permutations(&g, degree, seed_override(seed)?);
            output_map(&voltage_cover(&g, degree, &perms)?, &out)?;
            Ok(true)
        }
        CoverCommand::PlateauFree { file, out } => {
            output_map(&plateau_free_cover(&read_graph(&file)?)?, &out)?;
            Ok(true)
        }
        CoverCommand::Compose { first, second, out } => {
            let a = read_map(&first)?;
            let b = read_map(&second)?;
            let m = if b.target() == a.source() {
                compose(&a, &b)?
            } else if a.target() == b.source() {
                compose(&b, &a)?
            } else {
                return Err(Error::GraphMismatch(
                    "neither map's target is the other's source".into(),
                )
                .into());
            };
            output_map(&m, &out)?;
            Ok(true)
        }
        CoverCommand::ExtractPlateau { map } => {
            let m = read_map(&map)?;
            match extract_proper_plateau(&m) {
                Ok(p) => {
                    println!("{}", p.describe(m.target()));
                    Ok(true)
                }
                Err(Error::TopologicalCovering) => {
                    println!("plateau=none reason=topological-covering");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        CoverCommand::Classify { map } => {
            let m = read_map(&map)?;
            let c = classify(&m)?;
            println!("kind={} exceptional={}", c.kind, c.exceptional);
            Ok(true)
        }
        CoverCommand::Audit { map } => {
            let m = read_map(&map)?;
            let r = check_inequalities(&m)?;
            let q = &r.quantities;
            println!(
                "beta={} t={} t_good={} c={} c_good={} mu={} beta_bar={} t_bar={} mu_bar={} bad_vertices={} bad_plateaux={}",
                q.beta, q.t, q.t_good, q.c, q.c_good, q.mu, q.beta_bar, q.t_bar, q.mu_bar, q.bad_vertices, q.bad_plateaux
            );
            println!(
                "kind={} exceptional={}",
                r.classification.kind, r.classification.exceptional
            );
            for c in &r.checks {
                let status = match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Skip => "skip",
                };
                println!("check={} status={} detail={}", c.name, status, c.detail);
            }
            Ok(r.passed())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Rank { file } => {
            let g = read_graph(&file)?;
            let (b, m) = (g.betti(), mu(&g)?);
            println!("rank={} betti={b} mu={m}", rank(&g)?);
            Ok(true)
        }
        Command::Plateaux { file, prime } => {
            let g = read_graph(&file)?;
            let list = match prime {
                Some(p) => plateaux_for_prime(&g, p)?,
                None => all_plateaux(&g).proper_plateaux,
            };
            for p in &list {
                println!("{}", p.describe(&g));
            }
            println!("count={}", list.len());
            Ok(true)
        }
        Command::Mu { file } => {
            let g = read_graph(&file)?;
            let set = minimum_generating_vertices(&g)?;
            println!("mu={} vertices={}", set.len(), names(&g, &set));
            Ok(true)
        }
        Command::Generates { file, keep } => {
            let g = read_graph(&file)?;
            let ids = keep
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| g.require_vertex(s))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = generates(&g, &ids)?;
            println!("generates={ok}");
            Ok(ok)
        }
        Command::Reduce { file } => {
            print!("{}", emit_graph(&read_graph(&file)?.reduce()?));
            Ok(true)
        }
        Command::Normalize { file } => {
            print!("{}", emit_graph(&read_graph(&file)?.normalize_signs()?));
            Ok(true)
        }
        Command::Modulus { file } => {
            let g = read_graph(&file)?;
            let m = g.modulus()?;
            for e in &m.entries {
                let cycle: Vec<String> = e
                    .cycle
                    .iter()
                    .map(|d| {
                        let n = g.edge_name(d.edge);
                        if d.side == 0 {
                            n.to_string()
                        } else {
                            format!("~{n}")
                        }
                    })
                    .collect();
                println!("cycle={} value={}", cycle.join(","), e.value);
            }
            println!(
                "unimodular={} nontrivial_center={}",
                m.is_unimodular(),
                m.is_trivial()
            );
            Ok(true)
        }
        Command::Large { file } => {
            let large = is_large(&read_graph(&file)?)?;
            println!("large={large}");
            Ok(large)
        }
        Command::Commensurable {
            first,
            second,
            witness,
            max_degree,
            out,
        } => {
            let g1 = read_graph(&first)?;
            let g2 = read_graph(&second)?;
            let v = commensurable(&g1, &g2, witness.then_some(max_degree))?;
            let answer = match v.answer {
                Answer::Commensurable => "commensurable",
                Answer::NotCommensurable => "not-commensurable",
                Answer::OutOfScope => "out-of-scope",
            };
            println!("answer={answer} certificate={}", v.certificate);
            match &v.witness {
                WitnessStatus::NotRequested => {}
                WitnessStatus::NotFound { max_degree } => {
                    println!("witness=none max_degree={max_degree}");
                }
                WitnessStatus::Found(w) => {
                    println!(
                        "witness=found degrees={},{} vertices={} edges={}",
                        w.first.total_multiplicity(),
                        w.second.total_multiplicity(),
                        w.first.source().vertex_count(),
                        w.first.source().edge_count()
                    );
                    if let Some(prefix) = &out.out {
                        for (tag, m) in [("1", &w.first), ("2", &w.second)] {
                            let mut p = prefix.clone().into_os_string();
                            p.push(format!(".{tag}"));
                            output_map(m, &Out { out: Some(p.into()) })?;
                        }
                    }
                }
            }
            Ok(v.answer == Answer::Commensurable)
        }
        Command::Cover(cmd) => cover(cmd),
        Command::MappingTorus { file, graph_only } => {
            let path: &Path = &file;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let a = parse_automorphism(&text)?;
            let q = mapping_torus_graph(&subdivide_inverted_edges(&a))?;
            if !graph_only {
                println!(
                    "order={} inverted_edges={} rank={}",
                    a.order(),
                    a.inverted_edges().len(),
                    mapping_torus_rank(&a)?
                );
            }
            print!("{}", emit_graph(&q));
            Ok(true)
        }
        Command::Suite {
            name,
            count,
            seed,
            max_vertices,
            max_edges,
            max_label,
            quiet,
        } => {
            let cfg = GeneratorConfig {
                seed: seed_override(seed)?,
                max_vertices,
                max_edges,
                max_label,
                ..GeneratorConfig::default()
            };
            let r = run_suite(&name, &cfg, count)?;
            for (line, o) in r.lines().zip(&r.outcomes) {
                if !quiet || o.status == gbs_core::suite::Status::Fail {
                    println!("{line}");
                }
            }
            let failures = r.failures().count();
            println!(
                "summary suite={} instances={count} outcomes={} failures={failures}",
                r.suite,
                r.outcomes.len()
            );
            Ok(failures == 0)
        }
        Command::Generate { seed, recipe, out } => {
            let cfg = GeneratorConfig {
                seed: seed_override(seed)?,
                recipe: parse_recipe(&recipe)?,
                ..GeneratorConfig::default()
            };
            output_map(&gbs_core::generate::generate_admissible_map(&cfg)?, &out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
