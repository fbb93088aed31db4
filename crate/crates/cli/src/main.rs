use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use dessin_core::classify::DEFAULT_BUDGET;
use dessin_core::dessin::face_permutation;
use dessin_core::io::Format;
use dessin_core::{
    analyze, classify, genus_histogram, genus_range, parse_bipartite, parse_plain,
    serialize_report, BipartiteGraph, ClassifyError, ClassifyOptions, DessinError, GenusError,
    GraphError, PermError, Permutation, RotationError, RotationPair, DEFAULT_ELEMENT_CAP,
};

const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

/// Enumerate and classify dessins d'enfants on a bipartite graph.
#[derive(Debug, Parser)]
#[command(name = "dessin", version)]
struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every dessin with the given underlying graph, up to isomorphism.
    Classify {
        graph: PathBuf,
        #[arg(long, default_value = "table")]
        emit: Format,
        /// Cross-check duality against the group-element criterion.
        #[arg(long)]
        duality: bool,
        /// Refuse graphs with more candidate rotation pairs than this.
        #[arg(long, env = "DESSIN_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Apply the Wilson operation H(r,s) to each representative.
        #[arg(long, value_parser = parse_wilson, allow_hyphen_values = true)]
        wilson: Option<(i64, i64)>,
    },
    /// Minimum and maximum embedding genus of a plain graph.
    GenusRange {
        graph: PathBuf,
        /// Also print how many rotation systems have each genus.
        #[arg(long)]
        histogram: bool,
        #[arg(long, env = "DESSIN_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Invariants, automorphisms and mirror status of one rotation pair.
    Analyze {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Generators and order of the graph's automorphism group acting on edges.
    Autgroup { graph: PathBuf },
}

fn parse_wilson(s: &str) -> Result<(i64, i64), String> {
    let (r, t) = s
        .split_once(',')
        .ok_or_else(|| format!("expected r,s but got {s:?}"))?;
    let num = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(r)?, num(t)?))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_bipartite(path: &Path) -> Result<BipartiteGraph> {
    parse_bipartite(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn graph_name(path: &Path) -> Option<String> {
    path.file_stem().map(|s| s.to_string_lossy().into_owned())
}

fn cmd_classify(
    path: &Path,
    emit: Format,
    duality: bool,
    budget: u64,
    wilson: Option<(i64, i64)>,
) -> Result<String> {
    let graph = load_bipartite(path)?;
    let options = ClassifyOptions {
        budget,
        element_cap: DEFAULT_ELEMENT_CAP,
        duality_oracle: duality,
        wilson,
    };
    let report = classify(&graph, &options)?;
    eprintln!(
        "{} candidates, |G| = {}, {} dessins",
        report.graph.candidate_count,
        report.graph.aut_group_order,
        report.records.len()
    );
    Ok(serialize_report(
        &report,
        graph_name(path).as_deref(),
        emit,
    )?)
}

fn cmd_genus_range(path: &Path, histogram: bool, budget: u64) -> Result<String> {
    let plain = parse_plain(&read(path)?).with_context(|| format!("{}", path.display()))?;
    let r = genus_range(&plain, budget)?;
    let mut out = String::new();
    out.push_str(&format!("vertices: {}\n", plain.vertex_count()));
    out.push_str(&format!("edges: {}\n", plain.edge_count()));
    out.push_str(&format!("mu: {}\n", r.mu));
    out.push_str(&format!("nu: {}\n", r.nu));
    out.push_str(&format!("faces_max: {}\n", r.gamma_max));
    out.push_str(&format!("faces_min: {}\n", r.gamma_min));
    out.push_str(&format!("tau: {}\n", r.tau));
    out.push_str(&format!("mu_sigma: {}\n", r.min_witness));
    out.push_str(&format!("nu_sigma: {}\n", r.max_witness));
    if histogram {
        for (genus, count) in genus_histogram(&plain, budget)? {
            out.push_str(&format!("genus {genus}: {count}\n"));
        }
    }
    Ok(out)
}

fn cmd_analyze(path: &Path, sigma: &str, tau: &str) -> Result<String> {
    let graph = load_bipartite(path)?;
    let e = graph.edge_count();
    let sigma = Permutation::parse_cycles(sigma, e).context("--sigma")?;
    let tau = Permutation::parse_cycles(tau, e).context("--tau")?;
    let pair = RotationPair::new(sigma, tau);
    let a = analyze(&graph, &pair, DEFAULT_ELEMENT_CAP)?;
    let inv = &a.invariants;
    let mut out = String::new();
    out.push_str(&format!("sigma: {}\n", pair.sigma));
    out.push_str(&format!("tau: {}\n", pair.tau));
    out.push_str(&format!("faces: {}\n", face_permutation(&pair)));
    out.push_str(&format!("genus: {}\n", inv.genus));
    out.push_str(&format!("passport: {}\n", inv.passport));
    out.push_str(&format!("face_count: {}\n", inv.face_count));
    out.push_str(&format!("monodromy_order: {}\n", inv.monodromy_order));
    out.push_str(&format!("monodromy_even: {}\n", inv.fingerprint.all_even));
    out.push_str(&format!(
        "monodromy_point_stabilizer_order: {}\n",
        inv.fingerprint.point_stabilizer_order
    ));
    out.push_str(&format!("regular: {}\n", inv.regular));
    out.push_str(&format!("uniform: {}\n", inv.uniform));
    out.push_str(&format!("dualizable: {}\n", inv.dualizable));
    out.push_str(&format!("aut_order: {}\n", a.aut_order));
    for g in &a.aut_generators {
        out.push_str(&format!("aut_generator: {g}\n"));
    }
    out.push_str(&format!("orbit_length: {}\n", a.orbit_length));
    out.push_str(&format!(
        "mirror: {}\n",
        if a.reflexive { "reflexive" } else { "chiral" }
    ));
    out.push_str(&format!("canonical_sigma: {}\n", a.canonical.sigma));
    out.push_str(&format!("canonical_tau: {}\n", a.canonical.tau));
    Ok(out)
}

fn cmd_autgroup(path: &Path) -> Result<String> {
    let graph = load_bipartite(path)?;
    let group = graph.automorphism_group()?;
    let mut out = format!("order: {}\n", group.order());
    for g in group.theta().generators() {
        out.push_str(&format!("generator: {g}\n"));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<String> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("thread pool")?;
    }
    match cli.command {
        Command::Classify {
            graph,
            emit,
            duality,
            budget,
            wilson,
        } => cmd_classify(&graph, emit, duality, budget, wilson),
        Command::GenusRange {
            graph,
            histogram,
            budget,
        } => cmd_genus_range(&graph, histogram, budget),
        Command::Analyze { graph, sigma, tau } => cmd_analyze(&graph, &sigma, &tau),
        Command::Autgroup { graph } => cmd_autgroup(&graph),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<ClassifyError>() {
            return match e {
                ClassifyError::Budget { .. } => EXIT_BUDGET,
                ClassifyError::Invariant(_) => EXIT_INVARIANT,
                ClassifyError::Graph(GraphError::NotFaithful { .. }) => EXIT_INVARIANT,
                ClassifyError::Graph(_) | ClassifyError::Rotation(_) => EXIT_PARSE,
                ClassifyError::Dessin(DessinError::NotCoprime { .. }) => EXIT_PARSE,
                _ => 1,
            };
        }
        if let Some(e) = cause.downcast_ref::<GenusError>() {
            return match e {
                GenusError::Budget { .. } => EXIT_BUDGET,
                GenusError::Rotation(_) => EXIT_PARSE,
            };
        }
        if let Some(e) = cause.downcast_ref::<GraphError>() {
            return match e {
                GraphError::NotFaithful { .. } => EXIT_INVARIANT,
                _ => EXIT_PARSE,
            };
        }
        if cause.is::<PermError>() || cause.is::<RotationError>() || cause.is::<std::io::Error>() {
            return EXIT_PARSE;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
