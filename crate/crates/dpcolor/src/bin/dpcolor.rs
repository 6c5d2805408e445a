//! Command-line front end: exact solving, constructive coloring, witness
//! reproduction, and exhaustive cover search over text-file instances.
//!
//! Exit codes: 0 satisfiable / success, 1 unsatisfiable / failure,
//! 2 input or precondition error, 3 search witness found, 4 budget
//! exceeded. Scripts can branch on the code without parsing output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dpcolor::construct::{
    color_ge_n_plus_d, equitable_forest_two_block, sedp_delta_squared, sedp_forest, sedp_path,
    sigma_ff, FfOutcome, FfPolicy,
};
use dpcolor::cover::{Coloring, Cover};
use dpcolor::graph::{degeneracy_ordering, is_star};
use dpcolor::io::{
    instance_digests, parse_cover, parse_graph, serialize_certificate, serialize_cover,
    serialize_graph, Certificate,
};
use dpcolor::repro::{registry, run_repro};
use dpcolor::search::{decide_family_sharded, CoverFamily, FamilyKind, Outcome, Symmetry};
use dpcolor::solver::{check_coloring, solve, Mode};
use dpcolor::witness::paper_example;
use dpcolor::Error;

#[derive(Parser)]
#[command(
    name = "dpcolor",
    version,
    about = "Exact DP coloring with equitable and strongly equitable variants"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    /// First-fit along a degeneracy ordering, least color first.
    Ff,
    /// The guaranteed injective coloring for k >= n + d.
    Nd,
    /// Two-block equitable forest coloring.
    TwoBlock,
    /// Strongly equitable forest recursion, k >= max(Delta, 4).
    Forest,
    /// Strongly equitable path recursion, k >= 3.
    Path,
    /// The 3*Delta^2 block algorithm.
    Delta2,
    /// First applicable of: nd, forest, path, delta2.
    Auto,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide one instance exactly and print a verdict certificate.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        /// proper | mbounded | strongly-mbounded | injective
        #[arg(long)]
        mode: String,
        /// Defaults to the k recorded in the cover header.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a constructive algorithm and print a verified coloring
    /// certificate.
    Construct {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Re-run registered witness instances and report PASS or FAIL.
    Repro {
        /// A registry id such as c4-k3 or gnd-7-3-8.
        #[arg(long, conflicts_with = "all")]
        id: Option<String>,
        /// Run the whole registry.
        #[arg(long)]
        all: bool,
    },
    /// Exhaustively decide a cover family, with optional sharding.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// mbounded | strongly-mbounded
        #[arg(long)]
        mode: String,
        /// plain-full | plain-partial | general-lists
        #[arg(long, default_value = "plain-full")]
        family: String,
        /// none | color-perm | color-perm-auto
        #[arg(long, default_value = "color-perm")]
        symmetry: String,
        /// Palette size for general-lists families.
        #[arg(long)]
        gamma: Option<usize>,
        /// Enumeration budget; DPCOLOR_BUDGET overrides the default.
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// Write a registered witness instance to graph and cover files.
    Example {
        #[arg(long)]
        id: String,
        #[arg(long)]
        graph_out: PathBuf,
        #[arg(long)]
        cover_out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load_instance(graph: &PathBuf, cover: &PathBuf) -> Result<Cover, Error> {
    let gtext = std::fs::read_to_string(graph)?;
    let g = parse_graph(&gtext)?;
    let ctext = std::fs::read_to_string(cover)?;
    let h = parse_cover(&ctext, &g)?;
    let violations = h.validate();
    if !violations.is_empty() {
        let detail: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidCover(detail.join("; ")));
    }
    Ok(h)
}

fn dispatch(cmd: Cmd) -> Result<ExitCode, Error> {
    match cmd {
        Cmd::Solve { graph, cover, mode, k } => {
            let h = load_instance(&graph, &cover)?;
            let mode: Mode = mode.parse()?;
            let k = k.unwrap_or_else(|| h.k());
            let verdict = solve(&h, mode, k);
            let digests = instance_digests(&h);
            match verdict.witness {
                Some(f) => {
                    let cert = Certificate::Coloring {
                        mode,
                        k,
                        nodes: verdict.nodes_explored,
                        digests,
                        coloring: f,
                    };
                    print!("{}", serialize_certificate(&cert));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    let cert = Certificate::Unsat {
                        mode,
                        k,
                        nodes: verdict.nodes_explored,
                        digests,
                    };
                    print!("{}", serialize_certificate(&cert));
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Construct {
            graph,
            cover,
            algorithm,
            k,
        } => {
            let h = load_instance(&graph, &cover)?;
            let k = k.unwrap_or_else(|| h.k());
            construct(&h, algorithm, k)
        }
        Cmd::Repro { id, all } => {
            let ids: Vec<String> = if all || id.is_none() {
                registry().into_iter().map(|e| e.id).collect()
            } else {
                vec![id.unwrap()]
            };
            let mut ok = true;
            for id in ids {
                let out = run_repro(&id)?;
                println!(
                    "repro {}: {} — {}",
                    out.id,
                    if out.pass { "PASS" } else { "FAIL" },
                    out.detail
                );
                ok &= out.pass;
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Search {
            graph,
            k,
            mode,
            family,
            symmetry,
            gamma,
            budget,
            shards,
        } => {
            let gtext = std::fs::read_to_string(&graph)?;
            let g = parse_graph(&gtext)?;
            let mode: Mode = mode.parse()?;
            let kind: FamilyKind = family.parse()?;
            let symmetry: Symmetry = symmetry.parse()?;
            let budget = budget
                .or_else(|| {
                    std::env::var("DPCOLOR_BUDGET")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(dpcolor::search::DEFAULT_BUDGET);
            let family = CoverFamily {
                kind,
                palette_size: gamma.unwrap_or(k),
                symmetry,
                budget,
            };
            let result = decide_family_sharded(&g, k, mode, &family, shards)?;
            let witness = match result.outcome {
                Outcome::Witness(w) => Some(w),
                Outcome::AllColorable => None,
            };
            let found = witness.is_some();
            let cert = Certificate::SearchReport {
                graph_sha: dpcolor::io::digest(&serialize_graph(&g)),
                k,
                mode,
                family: kind,
                symmetry,
                covers: result.covers_enumerated,
                witness,
            };
            print!("{}", serialize_certificate(&cert));
            Ok(if found {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            })
        }
        Cmd::Example {
            id,
            graph_out,
            cover_out,
        } => {
            let example = dpcolor::repro::parse_id(&id)?;
            let w = paper_example(example)?;
            std::fs::write(&graph_out, serialize_graph(w.cover.graph()))?;
            std::fs::write(&cover_out, serialize_cover(&w.cover))?;
            println!(
                "example {id}: wrote instance, expected unsatisfiable for {} at k={}",
                w.mode, w.k
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn construct(h: &Cover, algorithm: Algorithm, k: usize) -> Result<ExitCode, Error> {
    let g = h.graph();
    let emit = |f: &Coloring, mode: Mode| -> Result<ExitCode, Error> {
        let report = check_coloring(h, f, mode, k)?;
        if !report.ok() {
            return Err(Error::invariant(
                "constructed coloring failed verification before emission",
            ));
        }
        let cert = Certificate::Coloring {
            mode,
            k,
            nodes: 0,
            digests: instance_digests(h),
            coloring: f.clone(),
        };
        print!("{}", serialize_certificate(&cert));
        Ok(ExitCode::SUCCESS)
    };
    match algorithm {
        Algorithm::Ff => {
            let ord = degeneracy_ordering(g);
            match sigma_ff(h, &ord.order, FfPolicy::MinColor)? {
                FfOutcome::Colored(f) => emit(&f, Mode::Injective),
                FfOutcome::Failed(b) => {
                    eprintln!("first-fit ran out of colors at position {}", b.position);
                    Ok(ExitCode::from(1))
                }
                FfOutcome::AllSucceeded { .. } => unreachable!(),
            }
        }
        Algorithm::Nd => emit(&color_ge_n_plus_d(h)?, Mode::Injective),
        Algorithm::TwoBlock => emit(&equitable_forest_two_block(h, k)?, Mode::MBounded),
        Algorithm::Forest => emit(&sedp_forest(h, k)?, Mode::StronglyMBounded),
        Algorithm::Path => emit(&sedp_path(h, k)?, Mode::StronglyMBounded),
        Algorithm::Delta2 => emit(&sedp_delta_squared(h, k)?.coloring, Mode::StronglyMBounded),
        Algorithm::Auto => {
            let n = g.n();
            let d = degeneracy_ordering(g).degeneracy;
            let delta = g.max_degree();
            if k >= n + d {
                emit(&color_ge_n_plus_d(h)?, Mode::Injective)
            } else if g.is_forest() && !is_star(g) && k >= delta.max(4) {
                emit(&sedp_forest(h, k)?, Mode::StronglyMBounded)
            } else if g.is_connected() && g.edge_count() + 1 == n && delta <= 2 && n != 3 && k >= 3
            {
                emit(&sedp_path(h, k)?, Mode::StronglyMBounded)
            } else if k >= 3 * delta * delta {
                emit(&sedp_delta_squared(h, k)?.coloring, Mode::StronglyMBounded)
            } else {
                Err(Error::pre(format!(
                    "no applicable construction: k = {k}, n = {n}, d = {d}, Delta = {delta}"
                )))
            }
        }
    }
}
