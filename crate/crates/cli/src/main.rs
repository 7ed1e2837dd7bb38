use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclelens::certificate::{self, Certificate};
use cyclelens::construct::{bcfy_construct, bcfy_for_order, cycle_lengths_closed_form, ChordedCycleGraph};
use cyclelens::cycles::{enumerate_cycles, is_two_connected, DEFAULT_CAP};
use cyclelens::ear::{
    build_family, check_few_cycles, check_structure, classify_all, ear_decompose, FeasibilityIndex, PathFamily,
};
use cyclelens::ordering::{check_pruned, prune_paths, run_ordering, PruneThresholds};
use cyclelens::random::random_two_connected;
use cyclelens::search::{exact_f, uniquely_pancyclic_search};
use cyclelens::sidon::{greedy_sidon, max_sidon_exact, singer_difference_set, Convention, DEFAULT_MAX_N};
use cyclelens::{Error, Graph};

const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Parser)]
#[command(name = "cyclelens", version, about = "Graphs with no two cycles of the same length")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Input file (graph JSON/DOT or certificate); `-` reads stdin.
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomly generated graphs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; all cores when absent.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Work budget for searches and feasibility enumeration.
    #[arg(long, global = true, env = "CYCLELENS_BUDGET")]
    budget: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Singer difference sets and integer Sidon sets.
    #[command(subcommand)]
    Sidon(SidonCmd),
    /// Chorded-cycle graphs from Sidon sets, or seeded random graphs.
    Construct(ConstructArgs),
    /// Cycle spectrum of a graph.
    Cycles {
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        /// Write a distinct-spectrum certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Ear decomposition, path family and pair classification.
    Analyze {
        #[arg(long, value_parser = parse_pair)]
        edge: Option<(usize, usize)>,
        /// Run the full check suite; exits with 3 on any failure.
        #[arg(long)]
        check_props: bool,
        /// Write a proposition-suite certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Arrange a subset of the path family and audit it.
    Order(OrderArgs),
    /// Counting-audit numbers as CSV, one row per band.
    Audit {
        #[arg(long, value_parser = parse_pair)]
        edge: Option<(usize, usize)>,
        /// Values of γ to sweep; β = γ / 2 (at least 1). The default band
        /// is always the first row.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 2.0, 3.0, 4.0])]
        gammas: Vec<f64>,
    },
    /// Exhaustive searches over small orders.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Replay a certificate.
    Verify,
}

#[derive(Subcommand)]
enum SidonCmd {
    Singer {
        #[arg(long)]
        q: u64,
    },
    Max {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = ConventionArg::Diff)]
        convention: ConventionArg,
    },
    Greedy {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Strict,
    Diff,
}

#[derive(Args)]
struct ConstructArgs {
    /// Prime power `q`; the graph has `q² + q + 2` vertices.
    #[arg(long, conflicts_with_all = ["n", "random"])]
    q: Option<u64>,
    /// Target order.
    #[arg(long)]
    n: Option<usize>,
    /// Emit a random 2-connected graph on `--n` vertices with this many
    /// edges beyond `n`.
    #[arg(long)]
    random: Option<usize>,
    /// Write a distinct-spectrum certificate here.
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long, value_parser = parse_pair)]
    edge: Option<(usize, usize)>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Family indices to arrange; the whole family when absent.
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<usize>>,
    /// Prune the subset first with the standard thresholds.
    #[arg(long)]
    prune: bool,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Largest repeat-free graph on `n` vertices.
    F {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        two_connected: bool,
        /// Write a search-optimal certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Graphs with exactly one cycle of each length `3..=n`.
    Upc {
        #[arg(long)]
        n: usize,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `u,v`")?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t}: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Failure with a process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::BudgetExceeded { .. } | Error::CapExceeded { .. }) => 1,
            Some(_) => 2,
            None if error.downcast_ref::<io::Error>().is_some() => 2,
            None => 1,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn breach(msg: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        error: anyhow!(msg.into()),
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    global: Global,
}

impl Ctx {
    fn budget(&self) -> u64 {
        self.global.budget.unwrap_or(DEFAULT_BUDGET)
    }

    fn read_input(&self) -> anyhow::Result<String> {
        match &self.global.input {
            None => Err(Error::InvalidInput("this command needs --in".into()).into()),
            Some(p) if p.as_os_str() == "-" => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                Ok(s)
            }
            Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        }
    }

    fn graph(&self) -> anyhow::Result<Graph> {
        let text = self.read_input()?;
        let trimmed = text.trim_start();
        let g = if trimmed.starts_with('{') {
            Graph::from_json_str(&text)?
        } else {
            Graph::from_dot_str(&text)?
        };
        Ok(g)
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.global.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_json(&self, v: &Value) -> anyhow::Result<()> {
        self.emit(&serde_json::to_string_pretty(v)?)
    }

    fn emit_graph(&self, g: &Graph, report: Value) -> anyhow::Result<()> {
        match self.global.format {
            Format::Dot => self.emit(&g.to_dot()),
            Format::Json => self.emit_json(&report),
            Format::Csv => Err(Error::InvalidInput("csv output is only available for `audit`".into()).into()),
        }
    }
}

fn write_cert(path: &PathBuf, cert: &Certificate) -> anyhow::Result<()> {
    fs::write(path, serde_json::to_string_pretty(cert)?).with_context(|| format!("writing {}", path.display()))
}

fn root_edge(g: &Graph, edge: Option<(usize, usize)>) -> anyhow::Result<(usize, usize)> {
    match edge {
        Some(e) => Ok(e),
        None => g
            .edges()
            .first()
            .copied()
            .ok_or_else(|| Error::InvalidInput("graph has no edges".into()).into()),
    }
}

fn family(g: &Graph, edge: Option<(usize, usize)>) -> anyhow::Result<PathFamily> {
    Ok(build_family(ear_decompose(g, root_edge(g, edge)?)?))
}

fn sidon(ctx: &Ctx, cmd: &SidonCmd) -> Outcome {
    let v = match *cmd {
        SidonCmd::Singer { q } => {
            let d = singer_difference_set(q)?;
            json!({ "v": d.v, "q": d.q, "elements": d.elements })
        }
        SidonCmd::Max { n, convention } => {
            let conv = match convention {
                ConventionArg::Strict => Convention::StrictSums,
                ConventionArg::Diff => Convention::DistinctDifferences,
            };
            let s = max_sidon_exact(n, conv, DEFAULT_MAX_N, ctx.budget())?;
            json!({ "n": n, "size": s.size(), "witness": s.elements })
        }
        SidonCmd::Greedy { n } => {
            let s = greedy_sidon(n);
            json!({ "n": n, "size": s.size(), "elements": s.elements })
        }
    };
    ctx.emit_json(&v)?;
    Ok(())
}

fn construct(ctx: &Ctx, a: &ConstructArgs) -> Outcome {
    let (g, chorded): (Graph, Option<ChordedCycleGraph>) = match (a.q, a.n, a.random) {
        (Some(q), _, _) => {
            let c = bcfy_construct(q)?;
            (c.graph().clone(), Some(c))
        }
        (None, Some(n), Some(extra)) => (random_two_connected(n, extra, ctx.global.seed)?, None),
        (None, Some(n), None) => {
            let c = bcfy_for_order(n)?;
            (c.graph().clone(), Some(c))
        }
        (None, None, _) => return Err(Error::InvalidInput("construct needs --q or --n".into()).into()),
    };
    let spectrum = enumerate_cycles(&g, DEFAULT_CAP)?;
    let mut report = json!({
        "n": g.n(),
        "edges": g.to_json().edges,
        "edge_count": g.edge_count(),
        "spectrum": spectrum.lengths,
        "distinct": spectrum.is_distinct(),
    });
    if let Some(c) = &chorded {
        if cycle_lengths_closed_form(c) != spectrum.lengths {
            return Err(breach("enumerated spectrum differs from the closed form"));
        }
        report["chords"] = json!(c.chord_positions());
        report["chord_cycles"] = json!(c.chord_cycles());
    }
    if let Some(path) = &a.cert {
        write_cert(path, &certificate::distinct_spectrum_certificate(&g, DEFAULT_CAP)?)?;
    }
    ctx.emit_graph(&g, report)?;
    Ok(())
}

fn cycles(ctx: &Ctx, cap: u64, cert: &Option<PathBuf>) -> Outcome {
    let g = ctx.graph()?;
    let s = enumerate_cycles(&g, cap)?;
    if let Some(path) = cert {
        write_cert(path, &certificate::distinct_spectrum_certificate(&g, cap)?)?;
    }
    let mut v = serde_json::to_value(&s).map_err(anyhow::Error::from)?;
    v["n"] = json!(g.n());
    v["edge_count"] = json!(g.edge_count());
    v["distinct"] = json!(s.is_distinct());
    v["two_connected"] = json!(is_two_connected(&g));
    ctx.emit_json(&v)?;
    Ok(())
}

fn analyze(ctx: &Ctx, edge: Option<(usize, usize)>, check_props: bool, cert: &Option<PathBuf>) -> Outcome {
    let g = ctx.graph()?;
    let root = root_edge(&g, edge)?;
    let fam = family(&g, Some(root))?;
    let classes = classify_all(&fam);
    let m = fam.len();
    let mut matrix = vec![vec![String::from("-"); m]; m];
    for c in &classes {
        matrix[c.i][c.j] = c.kind.name().to_string();
        matrix[c.j][c.i] = c.kind.name().to_string();
    }
    let spectrum = enumerate_cycles(&g, DEFAULT_CAP)?;
    let few = spectrum.cycle_count + 2 <= g.n() as u64;
    let index = FeasibilityIndex::build(&fam, ctx.budget()).ok();
    let mut report = json!({
        "root": [root.0, root.1],
        "ears": fam.decomposition().ears(),
        "order": fam.decomposition().order(),
        "paths": fam.paths().iter().map(|p| &p.vertices).collect::<Vec<_>>(),
        "pairs": classes,
        "matrix": matrix,
        "cycle_count": spectrum.cycle_count,
        "few_cycles": few,
    });
    if let Some(idx) = &index {
        report["feasibility"] = json!({
            "triples": idx.triples.len(),
            "quadruples": idx.quadruples.len(),
            "w_total": idx.w_total(),
        });
    }
    let mut failed = Vec::new();
    if check_props {
        let mut suite = check_structure(&fam);
        if few {
            let idx = match index {
                Some(i) => i,
                None => FeasibilityIndex::build(&fam, ctx.budget())?,
            };
            suite.checks.extend(check_few_cycles(&fam, &idx).checks);
        }
        failed = suite.failures().map(|c| c.name).collect();
        report["checks"] = serde_json::to_value(&suite).map_err(anyhow::Error::from)?;
    }
    if let Some(path) = cert {
        write_cert(path, &certificate::proposition_suite_certificate(&g, root, ctx.budget(), DEFAULT_CAP)?)?;
    }
    ctx.emit_json(&report)?;
    if !failed.is_empty() {
        return Err(breach(format!("checks failed: {}", failed.join(", "))));
    }
    Ok(())
}

fn order(ctx: &Ctx, a: &OrderArgs) -> Outcome {
    let g = ctx.graph()?;
    let fam = family(&g, a.edge)?;
    let mut subset = a.subset.clone().unwrap_or_else(|| (0..fam.len()).collect());
    let mut pruned = Value::Null;
    if a.prune {
        let pr = prune_paths(&fam, &subset, PruneThresholds::standard(g.n()), ctx.budget())?;
        pruned = json!({ "removed": pr.removed, "counts": pr.counts });
        subset = pr.kept;
        if subset.is_empty() {
            return Err(Error::InvalidInput("pruning removed every path".into()).into());
        }
    }
    let rep = run_ordering(&fam, &subset, a.beta, a.gamma, DEFAULT_CAP)?;
    let conditional = a
        .prune
        .then(|| check_pruned(&fam, &rep.separator, &rep.profile, &rep.ordered));
    let mut v = json!({
        "separator": rep.separator,
        "band": rep.profile,
        "arrangement": rep.ordered.arrangement,
        "trees": rep.ordered.trees,
        "fences": rep.ordered.fences,
        "intervals": rep.ordered.intervals,
        "checks": rep.checks,
        "audit": {
            "phi": rep.audit.phi.len(),
            "sigma_pairs": rep.audit.sigma_pairs,
            "sigma_edges": rep.audit.sigma_edges,
            "sigma_cycles": rep.audit.sigma_cycles,
            "diagnostics": rep.audit.diagnostics,
        },
        "consecutiveness": rep.consecutiveness,
        "pruning": pruned,
    });
    if let Some(c) = &conditional {
        v["pruned_checks"] = serde_json::to_value(c).map_err(anyhow::Error::from)?;
    }
    ctx.emit_json(&v)?;
    let mut failed: Vec<&str> = rep.checks.failures().map(|c| c.name).collect();
    if let Some(c) = &conditional {
        failed.extend(c.failures().map(|c| c.name));
    }
    if !rep.audit.consistent() {
        failed.push("counting-audit-consistency");
    }
    if !failed.is_empty() {
        return Err(breach(format!("checks failed: {}", failed.join(", "))));
    }
    Ok(())
}

fn audit(ctx: &Ctx, edge: Option<(usize, usize)>, gammas: &[f64]) -> Outcome {
    if ctx.global.format == Format::Dot {
        return Err(Error::InvalidInput("audit writes csv or json".into()).into());
    }
    let g = ctx.graph()?;
    let fam = family(&g, edge)?;
    let all: Vec<usize> = (0..fam.len()).collect();
    let mut bands: Vec<(Option<f64>, Option<f64>)> = vec![(None, None)];
    bands.extend(gammas.iter().map(|&gm| (Some((gm / 2.0).max(1.0).min(gm)), Some(gm))));
    let mut rows = Vec::new();
    for (beta, gamma) in bands {
        let rep = run_ordering(&fam, &all, beta, gamma, DEFAULT_CAP)?;
        let d = &rep.audit.diagnostics;
        rows.push(json!({
            "n": g.n(),
            "paths": all.len(),
            "beta": rep.profile.beta,
            "gamma": rep.profile.gamma,
            "intervals": rep.ordered.intervals.len(),
            "fences": rep.ordered.fences.len(),
            "phi": d.phi_count,
            "sigma_pairs": rep.audit.sigma_pairs,
            "sigma_edges": rep.audit.sigma_edges,
            "sigma_cycles": rep.audit.sigma_cycles,
            "triangular": d.triangular,
            "half_square": d.half_square,
            "max_edge_sum": d.max_edge_sum,
            "edge_sum_bound": d.edge_sum_bound,
            "high_edges": d.high_edges,
            "band_edges": d.band_edges,
            "low_edges": d.low_edges,
            "consistent": rep.audit.consistent(),
        }));
    }
    if ctx.global.format == Format::Json {
        ctx.emit_json(&Value::Array(rows))?;
        return Ok(());
    }
    const COLUMNS: [&str; 18] = [
        "n", "paths", "beta", "gamma", "intervals", "fences", "phi", "sigma_pairs", "sigma_edges", "sigma_cycles",
        "triangular", "half_square", "max_edge_sum", "edge_sum_bound", "high_edges", "band_edges", "low_edges",
        "consistent",
    ];
    let mut out = COLUMNS.join(",");
    out.push('\n');
    for r in &rows {
        let line: Vec<String> = COLUMNS.iter().map(|c| r[*c].to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    ctx.emit(&out)?;
    Ok(())
}

fn search(ctx: &Ctx, cmd: &SearchCmd) -> Outcome {
    match cmd {
        SearchCmd::F { n, two_connected, cert } => {
            let r = exact_f(*n, *two_connected, ctx.budget())?;
            if let Some(path) = cert {
                write_cert(path, &certificate::search_certificate(*n, *two_connected, ctx.budget())?)?;
            }
            let report = serde_json::to_value(&r).map_err(anyhow::Error::from)?;
            ctx.emit_graph(&r.witness, report)?;
        }
        SearchCmd::Upc { n } => {
            let found = uniquely_pancyclic_search(*n, ctx.budget())?;
            if ctx.global.format == Format::Dot {
                let dots: Vec<String> = found.iter().map(Graph::to_dot).collect();
                ctx.emit(&dots.join("\n"))?;
            } else {
                ctx.emit_json(&json!({ "n": n, "count": found.len(), "graphs": found }))?;
            }
        }
    }
    Ok(())
}

fn verify(ctx: &Ctx) -> Outcome {
    let text = ctx.read_input()?;
    let cert: Certificate = serde_json::from_str(&text).map_err(|e| anyhow::Error::from(Error::from(e)))?;
    let v = certificate::verify(&cert)?;
    ctx.emit_json(&json!({ "ok": v.ok(), "hash_ok": v.hash_ok, "mismatches": v.mismatches }))?;
    if !v.ok() {
        return Err(breach("certificate does not replay"));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if let Some(t) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| anyhow!("thread pool: {e}"))?;
    }
    let ctx = Ctx { global: cli.global };
    match &cli.command {
        Command::Sidon(c) => sidon(&ctx, c),
        Command::Construct(a) => construct(&ctx, a),
        Command::Cycles { cap, cert } => cycles(&ctx, *cap, cert),
        Command::Analyze { edge, check_props, cert } => analyze(&ctx, *edge, *check_props, cert),
        Command::Order(a) => order(&ctx, a),
        Command::Audit { edge, gammas } => audit(&ctx, *edge, gammas),
        Command::Search(c) => search(&ctx, c),
        Command::Verify => verify(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
