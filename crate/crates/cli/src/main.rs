//! `zeroerr`: command-line front end for the zeroerr library.
//!
//! Exit status is 0 on success, 2 when a budget left the answer undecided or
//! one-sided, and 1 on any error.

mod load;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use zeroerr::bounds::{
    c0_bounds, c_rel_bounds, eta_bounds, h0_bounds, hbar_bounds, typical_alpha_estimate, BoundInterval, BoundsConfig,
};
use zeroerr::codec::{
    build_channel_code, build_partial_si_code, build_si_code, build_sum_channel_code, channel_roundtrip,
    composition_for, simulate_si, CodeTarget, Codebook, OutputSampler, SimStats,
};
use zeroerr::combinat::{
    alpha_exact, chromatic_number_exact, maximal_independent_sets, min_entropy_coloring, omega_exact, HchiMode,
};
use zeroerr::graph::io::{graph_to_json, probabilistic_to_json};
use zeroerr::graph::{
    and_power, and_power_graph, and_product, and_product_graph, catalog_get, characteristic_graph, disjoint_union,
    disjoint_union_graph, is_perfect, is_vertex_transitive, Distribution, Graph, PerfectOutcome, ProbabilisticGraph,
    Transitivity,
};
use zeroerr::numopt::{
    capacity_achieving_distribution, korner_entropy, sum_channel_weights, CapacityOptions, KornerEvaluator,
    KornerOptions,
};
use zeroerr::verifier::{full_suite, SuiteConfig};
use zeroerr::{Budget, Error};

/// Failure modes, mapped to exit codes 1 and 2.
#[derive(Debug)]
pub enum CliError {
    Failed(String),
    Undecided(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Undecided(_) | Error::ProductTooLarge { .. } => CliError::Undecided(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// Whether a command's answer is complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Done,
    Undecided,
}

impl Outcome {
    fn from_exact(exact: bool) -> Self {
        if exact {
            Outcome::Done
        } else {
            Outcome::Undecided
        }
    }
}

type CmdResult = Result<Outcome, CliError>;

#[derive(Parser)]
#[command(name = "zeroerr", version, about = "Zero-error coding quantities on probabilistic graphs")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct CliConfig {
    /// Largest product graph that may be built.
    #[arg(long, global = true, default_value_t = Budget::default().vertices, value_parser = positive)]
    vertex_budget: usize,
    /// Wall-clock limit per solver call; off by default to keep runs reproducible.
    #[arg(long, global = true, value_parser = positive_u64)]
    time_budget_ms: Option<u64>,
    /// Search-node limit per exact solver call.
    #[arg(long, global = true, default_value_t = Budget::default().nodes, value_parser = positive_u64)]
    node_budget: u64,
    /// Target bracket width for the Körner solver, in bits.
    #[arg(long, global = true, default_value_t = KornerOptions::default().tol)]
    tol_bits: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "ZEROERR_THREADS", value_parser = positive)]
    threads: Option<usize>,
    #[arg(long = "format", global = true, value_enum, default_value_t = Format::Json)]
    output_format: Format,
    /// Output file; stdout when absent.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

impl CliConfig {
    fn budget(&self) -> Budget {
        Budget {
            vertices: self.vertex_budget,
            nodes: self.node_budget,
            time_ms: self.time_budget_ms,
            ..Budget::default()
        }
    }

    fn korner(&self) -> KornerOptions {
        KornerOptions {
            tol: self.tol_bits,
            ..KornerOptions::default()
        }
    }

    fn bounds(&self) -> BoundsConfig {
        BoundsConfig {
            budget: self.budget(),
            korner: self.korner(),
            ..BoundsConfig::default()
        }
    }

    fn out(&self) -> Option<&Path> {
        self.out.as_deref()
    }

    fn json_only(&self, what: &str) -> Result<(), CliError> {
        match self.output_format {
            Format::Json => Ok(()),
            Format::Csv => Err(CliError::Failed(format!("{what} has no CSV form; use --format json"))),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build, combine and inspect graph files.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Exact combinatorial solvers.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Körner entropy and capacity-achieving distributions.
    #[command(subcommand)]
    Entropy(EntropyCmd),
    /// Certified bound intervals.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Build zero-error codes and check them by simulation.
    #[command(subcommand)]
    Codec(CodecCmd),
    /// Complementary entropy of a family at a fixed type.
    Eta {
        /// Probabilistic graph files, one per part.
        #[arg(long, required = true, num_args = 1..)]
        parts: Vec<PathBuf>,
        /// Type counts, one per part, e.g. `1,1`.
        #[arg(long)]
        counts: String,
        #[arg(long, default_value_t = 1)]
        max_n: usize,
    },
    /// Run the scenario suite.
    Verify {
        /// Run only scenarios carrying one of these tags.
        #[arg(long = "tag")]
        tags: Vec<String>,
        /// Simulated roundtrips per codec scenario.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// A graph from an edge list, or the characteristic graph of a channel.
    Build {
        #[arg(long, required_unless_present = "channel")]
        n: Option<usize>,
        /// Edges as `0-1,1-2,...`.
        #[arg(long, default_value = "")]
        edges: String,
        /// Characteristic graph of this channel file.
        #[arg(long, conflicts_with_all = ["n", "edges"])]
        channel: Option<PathBuf>,
        /// Vertex distribution as comma-separated weights summing to one.
        #[arg(long)]
        dist: Option<String>,
        /// Comma-separated vertex labels.
        #[arg(long)]
        labels: Option<String>,
    },
    /// AND product of two graphs; distributions multiply when both files carry one.
    Product { a: PathBuf, b: PathBuf },
    /// Disjoint union; with `--weights` the parts' distributions are mixed.
    Union {
        #[arg(required = true, num_args = 1..)]
        parts: Vec<PathBuf>,
        #[arg(long)]
        weights: Option<String>,
    },
    Complement { graph: PathBuf },
    /// AND power.
    Power {
        graph: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// A named graph: cycle, complete, empty, path (with `--size`) or schlafli.
    Catalog {
        #[arg(long)]
        name: String,
        #[arg(long)]
        size: Option<usize>,
        /// Attach the uniform distribution.
        #[arg(long)]
        uniform: bool,
    },
    /// Size, degrees, strong regularity, perfectness and transitivity.
    Info { graph: PathBuf },
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Independence number with a witness.
    Alpha { graph: PathBuf },
    /// Chromatic number with a colouring.
    Chi { graph: PathBuf },
    /// Clique number with a witness.
    Omega { graph: PathBuf },
    /// Minimum-entropy colouring.
    Hchi {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// All maximal independent sets.
    Mis { graph: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Heuristic,
}

#[derive(Subcommand)]
enum EntropyCmd {
    /// Körner graph entropy with its certified bracket.
    Kappa { graph: PathBuf },
    /// Distribution maximising the relative capacity.
    Capdist { graph: PathBuf },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Complementary graph entropy.
    Hbar(BoundArgs),
    /// Relative zero-error capacity.
    C(BoundArgs),
    /// Zero-error capacity.
    C0(BoundArgs),
    /// Witsenhausen rate.
    H0(BoundArgs),
    /// Uncertified estimate from the typical induced subgraph.
    TypicalAlpha {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 2)]
    max_n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Exact,
    Greedy,
}

#[derive(Subcommand)]
enum CodecCmd {
    /// Source code with full side information at the decoder.
    Si {
        #[arg(long)]
        channel: PathBuf,
        /// Source distribution; uniform when absent.
        #[arg(long)]
        dist: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Source code when the encoder sees a function of the side information.
    PartialSi {
        #[arg(long)]
        channel: PathBuf,
        /// JSON matrix of joint weights indexed `[x][y]`.
        #[arg(long)]
        joint: PathBuf,
        /// Class of each output, e.g. `0,1,1`.
        #[arg(long)]
        g_map: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Zero-error channel code; `--out` writes the codebook.
    Channel {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Target::Exact)]
        target: Target,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Code for a sum of channels built from one exact code per channel.
    Sum {
        #[arg(long, required = true, num_args = 1..)]
        channels: Vec<PathBuf>,
        /// Block length of each per-channel code.
        #[arg(long, default_value_t = 1)]
        block: usize,
        /// Total block length; the composition follows the optimal time sharing.
        #[arg(long, required_unless_present = "composition")]
        length: Option<usize>,
        /// Explicit slot counts per channel, e.g. `3,4`.
        #[arg(long)]
        composition: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Roundtrip an existing codebook file through a channel.
    Simulate {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        book: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot start {t} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match dispatch(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Undecided) => {
            eprintln!("undecided: a budget was exhausted; the report is one-sided or partial");
            ExitCode::from(2)
        }
        Err(CliError::Undecided(msg)) => {
            eprintln!("undecided: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    let cfg = &cli.config;
    match &cli.command {
        Command::Graph(cmd) => graph_cmd(cmd, cfg),
        Command::Solve(cmd) => solve_cmd(cmd, cfg),
        Command::Entropy(cmd) => entropy_cmd(cmd, cfg),
        Command::Bounds(cmd) => bounds_cmd(cmd, cfg),
        Command::Codec(cmd) => codec_cmd(cmd, cfg),
        Command::Eta { parts, counts, max_n } => {
            let parts = parts.iter().map(|p| load::probabilistic(p)).collect::<Result<Vec<_>, _>>()?;
            let counts = counts
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Failed(format!("counts: `{c}` is not a count")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let b = eta_bounds(&parts, &counts, *max_n, &cfg.bounds())?;
            emit_bounds(&b, cfg)
        }
        Command::Verify { tags, trials } => {
            let suite = SuiteConfig {
                budget: cfg.budget(),
                seed: cfg.seed,
                trials: *trials,
                tags: tags.clone(),
            };
            let report = full_suite(&suite);
            let text = match cfg.output_format {
                Format::Json => report.to_json()? + "\n",
                Format::Csv => report.to_csv()?,
            };
            output::write(&text, cfg.out())?;
            if report.failed > 0 || report.errors > 0 {
                Err(CliError::Failed(format!(
                    "{} scenarios failed and {} raised errors",
                    report.failed, report.errors
                )))
            } else {
                Ok(Outcome::from_exact(report.undecided == 0))
            }
        }
    }
}

fn write_graph(g: &Graph, cfg: &CliConfig) -> CmdResult {
    output::write(&(graph_to_json(g) + "\n"), cfg.out())?;
    Ok(Outcome::Done)
}

fn write_pg(pg: &ProbabilisticGraph, cfg: &CliConfig) -> CmdResult {
    output::write(&(probabilistic_to_json(pg) + "\n"), cfg.out())?;
    Ok(Outcome::Done)
}

fn graph_cmd(cmd: &GraphCmd, cfg: &CliConfig) -> CmdResult {
    cfg.json_only("graph output")?;
    let budget = cfg.budget();
    match cmd {
        GraphCmd::Build { n, edges, channel, dist, labels } => {
            let mut g = match channel {
                Some(path) => characteristic_graph(&load::channel(path)?)?,
                None => Graph::from_edges(n.unwrap_or(0), &load::edges(edges)?)
                    .map_err(|e| CliError::Failed(format!("edges: {e}")))?,
            };
            if let Some(l) = labels {
                g = g
                    .with_labels(l.split(',').map(|s| s.trim().to_string()).collect())
                    .map_err(|e| CliError::Failed(format!("labels: {e}")))?;
            }
            match dist {
                Some(d) => write_pg(&ProbabilisticGraph::new(g, load::distribution(d, "dist")?)?, cfg),
                None => write_graph(&g, cfg),
            }
        }
        GraphCmd::Product { a, b } => {
            if load::has_dist(a)? && load::has_dist(b)? {
                let pg = and_product(&load::probabilistic(a)?, &load::probabilistic(b)?, budget.vertices)?;
                write_pg(&pg, cfg)
            } else {
                write_graph(&and_product_graph(&load::graph(a)?, &load::graph(b)?, budget.vertices)?, cfg)
            }
        }
        GraphCmd::Union { parts, weights } => match weights {
            Some(w) => {
                let pgs = parts.iter().map(|p| load::probabilistic(p)).collect::<Result<Vec<_>, _>>()?;
                let (pg, _) = disjoint_union(&pgs, &load::distribution(w, "weights")?)?;
                write_pg(&pg, cfg)
            }
            None => {
                let gs = parts.iter().map(|p| load::graph(p)).collect::<Result<Vec<_>, _>>()?;
                write_graph(&disjoint_union_graph(&gs), cfg)
            }
        },
        GraphCmd::Complement { graph } => {
            if load::has_dist(graph)? {
                let pg = load::probabilistic(graph)?;
                write_pg(&ProbabilisticGraph::new(pg.graph.complement(), pg.dist)?, cfg)
            } else {
                write_graph(&load::graph(graph)?.complement(), cfg)
            }
        }
        GraphCmd::Power { graph, n } => {
            if load::has_dist(graph)? {
                write_pg(&and_power(&load::probabilistic(graph)?, *n, budget.vertices)?, cfg)
            } else {
                write_graph(&and_power_graph(&load::graph(graph)?, *n, budget.vertices)?, cfg)
            }
        }
        GraphCmd::Catalog { name, size, uniform } => {
            let params: Vec<usize> = size.iter().copied().collect();
            let g = catalog_get(name, &params)?;
            if *uniform {
                write_pg(&ProbabilisticGraph::uniform(g), cfg)
            } else {
                write_graph(&g, cfg)
            }
        }
        GraphCmd::Info { graph } => {
            let pg = load::probabilistic(graph)?;
            let mut info = graph_info(&pg.graph, &budget);
            if load::has_dist(graph)? {
                info["entropy"] = json!(pg.entropy());
            }
            output::json(&info, cfg.out())?;
            Ok(Outcome::Done)
        }
    }
}

/// `(lambda, mu)` when the regular graph `g` is strongly regular.
fn srg_parameters(g: &Graph) -> Option<(usize, usize)> {
    let n = g.n();
    let common = |u: usize, v: usize| (0..n).filter(|&w| g.adjacent(u, w) && g.adjacent(v, w)).count();
    let (mut lambda, mut mu) = (None, None);
    for u in 0..n {
        for v in u + 1..n {
            let slot = if g.adjacent(u, v) { &mut lambda } else { &mut mu };
            let c = common(u, v);
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    Some((lambda.unwrap_or(0), mu.unwrap_or(0)))
}

/// Descriptive summary; properties the budget leaves undecided are `null`.
fn graph_info(g: &Graph, budget: &Budget) -> serde_json::Value {
    let degrees = g.degrees();
    let perfect = match is_perfect(g, budget) {
        PerfectOutcome::Perfect => json!({"perfect": true}),
        PerfectOutcome::NotPerfect { hole, in_complement } => {
            json!({"perfect": false, "odd_hole": hole, "in_complement": in_complement})
        }
        PerfectOutcome::Undecided => json!({"perfect": null}),
    };
    let transitive = match is_vertex_transitive(g, budget) {
        Transitivity::Transitive => json!(true),
        Transitivity::NotTransitive => json!(false),
        Transitivity::Undecided => serde_json::Value::Null,
    };
    let mut info = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "min_degree": degrees.iter().min().copied().unwrap_or(0),
        "max_degree": degrees.iter().max().copied().unwrap_or(0),
        "perfectness": perfect,
        "vertex_transitive": transitive,
    });
    if let Some(k) = g.regular_degree() {
        info["degree"] = json!(k);
        if let Some((lambda, mu)) = srg_parameters(g) {
            info["strongly_regular"] = json!({"n": g.n(), "k": k, "lambda": lambda, "mu": mu});
        }
    }
    info
}

fn solve_cmd(cmd: &SolveCmd, cfg: &CliConfig) -> CmdResult {
    cfg.json_only("solver output")?;
    let budget = cfg.budget();
    match cmd {
        SolveCmd::Alpha { graph } => {
            let r = alpha_exact(&load::graph(graph)?, &budget);
            output::json(&r, cfg.out())?;
            Ok(Outcome::from_exact(r.exact))
        }
        SolveCmd::Omega { graph } => {
            let r = omega_exact(&load::graph(graph)?, &budget);
            output::json(&r, cfg.out())?;
            Ok(Outcome::from_exact(r.exact))
        }
        SolveCmd::Chi { graph } => {
            let r = chromatic_number_exact(&load::graph(graph)?, &budget);
            output::json(&r, cfg.out())?;
            Ok(Outcome::from_exact(r.exact))
        }
        SolveCmd::Hchi { graph, mode } => {
            let mode = match mode {
                Mode::Exact => HchiMode::Exact,
                Mode::Heuristic => HchiMode::Heuristic,
            };
            let r = min_entropy_coloring(&load::probabilistic(graph)?, mode, &budget);
            output::json(&r, cfg.out())?;
            Ok(Outcome::from_exact(r.exact || mode == HchiMode::Heuristic))
        }
        SolveCmd::Mis { graph } => {
            let sets = maximal_independent_sets(&load::graph(graph)?, &budget)?;
            output::json(&json!({"count": sets.len(), "sets": sets}), cfg.out())?;
            Ok(Outcome::Done)
        }
    }
}

fn entropy_cmd(cmd: &EntropyCmd, cfg: &CliConfig) -> CmdResult {
    cfg.json_only("entropy output")?;
    let budget = cfg.budget();
    match cmd {
        EntropyCmd::Kappa { graph } => {
            let pg = load::probabilistic(graph)?;
            let s = korner_entropy(&pg, &cfg.korner(), &budget)?;
            output::json(&s, cfg.out())?;
            Ok(Outcome::from_exact(s.converged))
        }
        EntropyCmd::Capdist { graph } => {
            let g = load::graph(graph)?;
            let n = g.n();
            let mut evaluator = KornerEvaluator::new(g, &budget);
            evaluator.opts = cfg.korner();
            let r = capacity_achieving_distribution(n, &evaluator, &CapacityOptions::default())?;
            output::json(&r, cfg.out())?;
            Ok(Outcome::from_exact(r.converged))
        }
    }
}

const CLOSED_WIDTH: f64 = 1e-9;

fn emit_bounds(b: &BoundInterval, cfg: &CliConfig) -> CmdResult {
    match cfg.output_format {
        Format::Json => output::json(b, cfg.out())?,
        Format::Csv => output::write(&output::bounds_csv(b), cfg.out())?,
    }
    // a closed interval decides the quantity even when a solver gave up along the way
    let weakened = output::flagged(&b.lo_cert) || output::flagged(&b.hi_cert);
    Ok(Outcome::from_exact(!weakened || b.hi - b.lo <= CLOSED_WIDTH))
}

fn bounds_cmd(cmd: &BoundsCmd, cfg: &CliConfig) -> CmdResult {
    let bc = cfg.bounds();
    let b = match cmd {
        BoundsCmd::Hbar(a) => hbar_bounds(&load::probabilistic(&a.graph)?, a.max_n, &bc)?,
        BoundsCmd::C(a) => c_rel_bounds(&load::probabilistic(&a.graph)?, a.max_n, &bc)?,
        BoundsCmd::C0(a) => c0_bounds(&load::graph(&a.graph)?, a.max_n, &bc)?,
        BoundsCmd::H0(a) => h0_bounds(&load::graph(&a.graph)?, a.max_n, &bc)?,
        BoundsCmd::TypicalAlpha { graph, n, eps } => {
            cfg.json_only("typical-alpha")?;
            let e = typical_alpha_estimate(&load::probabilistic(graph)?, *n, *eps, &bc.budget)?;
            output::json(&e, cfg.out())?;
            return Ok(Outcome::from_exact(e.alpha_exact));
        }
    };
    emit_bounds(&b, cfg)
}

#[derive(Serialize)]
struct Simulation {
    trials: u64,
    failures: u64,
    mean_bits: f64,
    stderr_bits: f64,
}

impl Simulation {
    fn of(s: &SimStats) -> Result<Self, CliError> {
        if s.failures() > 0 {
            return Err(CliError::Failed(format!(
                "{} of {} simulated blocks failed to decode",
                s.failures(),
                s.trials
            )));
        }
        Ok(Simulation {
            trials: s.trials,
            failures: s.failures(),
            mean_bits: s.mean_bits(),
            stderr_bits: s.stderr_bits(),
        })
    }
}

fn codec_cmd(cmd: &CodecCmd, cfg: &CliConfig) -> CmdResult {
    let budget = cfg.budget();
    match cmd {
        CodecCmd::Si { channel, dist, n, eps, trials } => {
            cfg.json_only("codec output")?;
            let ch = load::channel(channel)?;
            let p = match dist {
                Some(d) => load::distribution(d, "dist")?,
                None => Distribution::uniform(ch.x_count),
            };
            let code = build_si_code(&ch, &p, *n, *eps, &budget)?;
            let s = simulate_si(&code, &p, &OutputSampler::new(&ch), *trials, cfg.seed);
            let sim = Simulation::of(&s)?;
            let report = json!({
                "n": code.n,
                "eps": code.eps,
                "typical_sequences": code.members.len(),
                "typical_mass": code.typical_mass,
                "colors": code.color_weights.len(),
                "coloring_exact": code.coloring_exact,
                "escape_length": code.escape_length,
                "expected_rate": code.expected_rate(),
                "rate_budget": code.rate_budget(),
                "empirical_rate": sim.mean_bits / *n as f64,
                "simulation": sim,
            });
            output::json(&report, cfg.out())?;
            Ok(Outcome::from_exact(code.coloring_exact))
        }
        CodecCmd::PartialSi { channel, joint, g_map, n, eps, trials } => {
            cfg.json_only("codec output")?;
            let ch = load::channel(channel)?;
            let joint = load::matrix(joint)?;
            let g_map = g_map
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Failed(format!("g-map: `{c}` is not a class index")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let code = build_partial_si_code(&ch, &joint, &g_map, *n, *eps, &budget)?;
            let sim = Simulation::of(&code.simulate(*trials, cfg.seed))?;
            let report = json!({
                "n": code.n,
                "eps": code.eps,
                "class_weights": code.p_a,
                "empirical_rate": sim.mean_bits / *n as f64,
                "simulation": sim,
            });
            output::json(&report, cfg.out())?;
            Ok(Outcome::Done)
        }
        CodecCmd::Channel { channel, n, target, trials } => {
            let ch = load::channel(channel)?;
            let target = match target {
                Target::Exact => CodeTarget::Exact,
                Target::Greedy => CodeTarget::Greedy,
            };
            let code = build_channel_code(&ch, *n, target, &budget)?;
            let sim = Simulation::of(&channel_roundtrip(&code, &ch, *trials, cfg.seed)?)?;
            let report = json!({
                "n": code.n,
                "size": code.len(),
                "rate": code.rate(),
                "maximum": code.maximum,
                "codewords": code.codewords,
                "simulation": sim,
            });
            emit_code(&code, &report, cfg)?;
            Ok(Outcome::from_exact(target == CodeTarget::Greedy || code.maximum))
        }
        CodecCmd::Sum { channels, block, length, composition, trials } => {
            cfg.json_only("codec output")?;
            let chs = channels.iter().map(|c| load::channel(c)).collect::<Result<Vec<_>, _>>()?;
            let mut books = Vec::with_capacity(chs.len());
            for ch in &chs {
                books.push(build_channel_code(ch, *block, CodeTarget::Exact, &budget)?);
            }
            let rates: Vec<f64> = books.iter().map(Codebook::rate).collect();
            let (weights, target) = sum_channel_weights(&rates)?;
            let comp = match (composition, length) {
                (Some(c), _) => c
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .map_err(|_| CliError::Failed(format!("composition: `{s}` is not a count")))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                (None, Some(len)) => composition_for(weights.weights(), *len),
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let code = build_sum_channel_code(&chs, &books, &comp)?;
            let sim = Simulation::of(&code.simulate(*trials, cfg.seed))?;
            let report = json!({
                "n": code.n,
                "composition": code.composition,
                "book_sizes": books.iter().map(Codebook::len).collect::<Vec<_>>(),
                "optimal_weights": weights.weights(),
                "message_bits": code.message_bits(),
                "rate": code.rate(),
                "rate_target": target,
                "simulation": sim,
            });
            output::json(&report, cfg.out())?;
            Ok(Outcome::from_exact(books.iter().all(|b| b.maximum)))
        }
        CodecCmd::Simulate { channel, book, trials } => {
            cfg.json_only("codec output")?;
            let ch = load::channel(channel)?;
            let mut code = load::codebook(book)?;
            code.check(&characteristic_graph(&ch)?)
                .map_err(|e| CliError::Failed(format!("{}: {e}", book.display())))?;
            let sim = Simulation::of(&channel_roundtrip(&code, &ch, *trials, cfg.seed)?)?;
            let report = json!({"n": code.n, "size": code.len(), "rate": code.rate(), "simulation": sim});
            output::json(&report, cfg.out())?;
            Ok(Outcome::Done)
        }
    }
}

/// With `--out` the codebook file is written and the report goes to stdout.
fn emit_code(code: &Codebook, report: &serde_json::Value, cfg: &CliConfig) -> Result<(), CliError> {
    cfg.json_only("codec output")?;
    if let Some(path) = cfg.out() {
        let text = serde_json::to_string(&code.codewords).map_err(Error::from)? + "\n";
        output::write(&text, Some(path))?;
    }
    output::json(report, None)
}
