//! Command implementations behind the `ctqw-clique` binary.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ctqw_clique::ideal::{
    gen_base_graph_wired, gen_first_kind, gen_second_kind, BaseGraphSpec, BaseWiring, FirstKindSpec, IdealError,
    SecondKindSpec,
};
use ctqw_clique::io::{format_graph, parse_graph, Format};
use ctqw_clique::oracle::{max_clique_with, OracleConfig, OracleError};
use ctqw_clique::random::{gnp, trial_rng, trial_seed};
use ctqw_clique::solver::{self, SolverConfig, SolverError};
use ctqw_clique::{Clique, Graph, GraphError, Label};
use rayon::prelude::*;
use thiserror::Error;

pub const THREADS_ENV: &str = "CTQW_CLIQUE_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: GraphError },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl CliError {
    /// Exit status for the error. Status 1 is reserved for a failed
    /// verification, which is not an error.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

#[derive(Debug, Parser)]
#[command(name = "ctqw-clique", version, about = "Maximum-clique heuristics from continuous-time quantum walks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a random or structured graph.
    Generate(GenerateArgs),
    /// Run one solver on a graph file.
    Solve(SolveArgs),
    /// Batch study on seeded G(n, p) graphs, written as CSV.
    Experiment(ExperimentArgs),
    /// Check that a vertex set is a clique.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Gnp,
    FirstKind,
    SecondKind,
    Base,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Wiring {
    PerTriple,
    SharedBlock,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Dimacs,
    Edgelist,
}

impl From<FileFormat> for Format {
    fn from(f: FileFormat) -> Self {
        match f {
            FileFormat::Dimacs => Format::Dimacs,
            FileFormat::Edgelist => Format::EdgeList,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub kind: GraphKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub m1: Option<usize>,
    #[arg(long)]
    pub m2: Option<usize>,
    #[arg(long)]
    pub z: Option<usize>,
    #[arg(long)]
    pub omega: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long, value_enum, default_value = "per-triple")]
    pub wiring: Wiring,
    #[arg(long, value_enum, default_value = "dimacs")]
    pub format: FileFormat,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    A,
    B,
    C,
    Oracle,
    Pickmax,
    Deletemin,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::A => "a",
            Algo::B => "b",
            Algo::C => "c",
            Algo::Oracle => "oracle",
            Algo::Pickmax => "pickmax",
            Algo::Deletemin => "deletemin",
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "a")]
    pub algo: Algo,
    #[arg(long, value_enum, default_value = "dimacs")]
    pub format: FileFormat,
    /// Center vertex for pickmax and deletemin; defaults to the lowest label
    /// adjacent to every other vertex.
    #[arg(long)]
    pub center: Option<Label>,
    /// Print the solver trace.
    #[arg(long)]
    pub trace: bool,
    /// Algorithm C: start a walk from every neighbour of every vertex.
    #[arg(long)]
    pub sweep_references: bool,
    #[arg(long, default_value_t = OracleConfig::default().max_vertices)]
    pub oracle_cap: usize,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', value_enum, default_value = "a,oracle")]
    pub algos: Vec<Algo>,
    /// CSV destination; standard output when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Fill the `ms` column. Off by default so reruns are byte-identical.
    #[arg(long)]
    pub timing: bool,
    #[arg(long, default_value_t = OracleConfig::default().max_vertices)]
    pub oracle_cap: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    /// Vertex labels, separated by spaces or commas.
    #[arg(required = true, num_args = 1.., value_delimiter = ',')]
    pub labels: Vec<Label>,
    #[arg(long, value_enum, default_value = "dimacs")]
    pub format: FileFormat,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("{kind} needs --{flag}")))
}

fn load(path: &Path, format: FileFormat) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)?;
    parse_graph(&text, format.into()).map_err(|source| CliError::Graph {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn labels_line(labels: &[Label]) -> String {
    labels.iter().map(Label::to_string).collect::<Vec<_>>().join(" ")
}

pub fn generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let kind = args.kind;
    let name = format!("{kind:?}").to_lowercase();
    let (g, comments) = match kind {
        GraphKind::Gnp => {
            let n = need(args.n, "n", "gnp")?;
            let p = need(args.p, "p", "gnp")?;
            if !(0.0..=1.0).contains(&p) {
                return Err(usage(format!("--p {p} is outside [0, 1]")));
            }
            let g = gnp(n, p, &mut trial_rng(args.seed));
            (g, vec![format!("gnp n={n} p={p} seed={}", args.seed)])
        }
        GraphKind::FirstKind | GraphKind::SecondKind => {
            let m1 = need(args.m1, "m1", &name)?;
            let m2 = need(args.m2, "m2", &name)?;
            let (ideal, desc) = if kind == GraphKind::FirstKind {
                (gen_first_kind(FirstKindSpec { m1, m2 })?, format!("first-kind m1={m1} m2={m2}"))
            } else {
                let z = need(args.z, "z", &name)?;
                (gen_second_kind(SecondKindSpec { m1, m2, z })?, format!("second-kind m1={m1} m2={m2} z={z}"))
            };
            let planted = format!("planted_mc {}", labels_line(&ideal.planted));
            (ideal.graph, vec![desc, format!("center {}", ideal.center), planted])
        }
        GraphKind::Base => {
            let omega = need(args.omega, "omega", "base")?;
            let q = need(args.q, "q", "base")?;
            let z = need(args.z, "z", "base")?;
            let wiring = match args.wiring {
                Wiring::PerTriple => BaseWiring::PerTriple,
                Wiring::SharedBlock => BaseWiring::SharedBlock,
            };
            let ideal = gen_base_graph_wired(BaseGraphSpec { omega, q, z }, wiring)?;
            let planted = format!("planted_mc {}", labels_line(&ideal.planted));
            let desc = format!("base omega={omega} q={q} z={z} wiring={:?}", args.wiring).to_lowercase();
            (ideal.graph, vec![desc, format!("center {}", ideal.center), planted])
        }
    };
    emit(out, args.out.as_deref(), &format_graph(&g, args.format.into(), &comments))
}

fn default_center(g: &Graph) -> Result<Label, CliError> {
    (0..g.n())
        .find(|&i| g.is_center_at(i))
        .map(|i| g.label(i))
        .ok_or_else(|| usage("no vertex is adjacent to all others; pass --center"))
}

pub fn solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = load(&args.graph, args.format)?;
    let cfg = SolverConfig {
        sweep_references: args.sweep_references,
        record_trace: args.trace,
        ..SolverConfig::default()
    };
    let started = Instant::now();
    let (cliques, trace): (Vec<Clique>, _) = match args.algo {
        Algo::A => {
            let s = solver::algorithm_a(&g, &cfg);
            (vec![s.clique], s.trace)
        }
        Algo::B => {
            let s = solver::algorithm_b(&g, &cfg);
            (vec![s.clique], s.trace)
        }
        Algo::C => {
            let s = solver::algorithm_c(&g, &cfg);
            (s.cliques, s.trace)
        }
        Algo::Oracle => {
            let ocfg = OracleConfig {
                max_vertices: args.oracle_cap,
                ..OracleConfig::default()
            };
            let r = max_clique_with(&g, false, &ocfg)?;
            (r.witnesses, Default::default())
        }
        Algo::Pickmax | Algo::Deletemin => {
            let center = match args.center {
                Some(c) => c,
                None => default_center(&g)?,
            };
            let s = if args.algo == Algo::Pickmax {
                solver::pick_max(&g, center, &cfg)?
            } else {
                solver::delete_min(&g, center, &cfg)?
            };
            (vec![s.clique], s.trace)
        }
    };
    let ms = started.elapsed().as_secs_f64() * 1e3;
    let size = cliques.first().map_or(0, Clique::size);
    writeln!(out, "algo={} size={size} ms={ms:.3}", args.algo.name())?;
    for c in &cliques {
        writeln!(out, "clique {}", labels_line(c.members()))?;
    }
    if args.trace {
        for step in &trace.steps {
            let num = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.6}"));
            writeln!(
                out,
                "trace {:?} {} {} {}",
                step.kind,
                step.vertex,
                num(step.frequency),
                num(step.intensity)
            )?;
        }
    }
    Ok(())
}

/// One CSV row; `omega` and `match` are empty above the oracle cap.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub n: usize,
    pub p: f64,
    pub trial: usize,
    pub algo: Algo,
    pub size: Option<usize>,
    pub omega: Option<usize>,
    pub ms: f64,
    pub seed: u64,
}

impl Row {
    pub fn matched(&self) -> Option<bool> {
        Some(self.size? == self.omega?)
    }

    fn csv(&self, timing: bool) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.p,
            self.trial,
            self.algo.name(),
            opt(self.size),
            opt(self.omega),
            self.matched().map(|m| m.to_string()).unwrap_or_default(),
            if timing { format!("{:.3}", self.ms) } else { String::new() },
            self.seed
        )
    }
}

pub const CSV_HEADER: &str = "n,p,trial,algo,size,omega,match,ms,seed";

fn run_trial(n: usize, p: f64, trial: usize, seed: u64, algos: &[Algo], cap: usize) -> Vec<Row> {
    let ts = trial_seed(seed, n, p, trial);
    let g = gnp(n, p, &mut trial_rng(ts));
    let ocfg = OracleConfig {
        max_vertices: cap,
        ..OracleConfig::default()
    };
    let omega = max_clique_with(&g, false, &ocfg).ok().map(|r| r.omega);
    let cfg = SolverConfig {
        record_trace: false,
        ..SolverConfig::default()
    };
    algos
        .iter()
        .map(|&algo| {
            let started = Instant::now();
            let size = match algo {
                Algo::A => Some(solver::algorithm_a(&g, &cfg).clique.size()),
                Algo::B => Some(solver::algorithm_b(&g, &cfg).clique.size()),
                Algo::C => Some(solver::algorithm_c(&g, &cfg).size()),
                Algo::Oracle => omega,
                Algo::Pickmax | Algo::Deletemin => unreachable!("rejected before the run"),
            };
            Row {
                n,
                p,
                trial,
                algo,
                size,
                omega,
                ms: started.elapsed().as_secs_f64() * 1e3,
                seed: ts,
            }
        })
        .collect()
}

/// Runs the batch; rows come back in `(n, p, trial, algo)` order whatever the
/// thread count.
pub fn experiment_rows(args: &ExperimentArgs) -> Result<Vec<Row>, CliError> {
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    if let Some(p) = args.p.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
        return Err(usage(format!("--p {p} is outside (0, 1)")));
    }
    if let Some(a) = args.algos.iter().find(|a| matches!(a, Algo::Pickmax | Algo::Deletemin)) {
        return Err(usage(format!("{} needs a center graph; experiment supports a, b, c, oracle", a.name())));
    }
    let mut algos = args.algos.clone();
    algos.dedup();
    let jobs: Vec<(usize, f64, usize)> = args
        .n
        .iter()
        .flat_map(|&n| args.p.iter().flat_map(move |&p| (0..args.trials).map(move |t| (n, p, t))))
        .collect();
    let work = || -> Vec<Row> {
        jobs.par_iter()
            .flat_map_iter(|&(n, p, t)| run_trial(n, p, t, args.seed, &algos, args.oracle_cap))
            .collect()
    };
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok());
    Ok(match threads {
        Some(k) if k > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| usage(e.to_string()))?
            .install(work),
        _ => work(),
    })
}

pub fn summary_table(rows: &[Row]) -> String {
    let mut cells: Vec<(usize, f64, Algo, usize, usize)> = Vec::new();
    for r in rows {
        let hit = r.matched() == Some(true);
        let known = r.matched().is_some();
        match cells.iter_mut().find(|c| c.0 == r.n && c.1 == r.p && c.2 == r.algo) {
            Some(c) => {
                c.3 += hit as usize;
                c.4 += known as usize;
            }
            None => cells.push((r.n, r.p, r.algo, hit as usize, known as usize)),
        }
    }
    let mut out = format!("{:>5} {:>6} {:>8} {:>9} {:>7}\n", "n", "p", "algo", "matched", "rate");
    for (n, p, algo, hits, known) in cells {
        let rate = if known > 0 {
            format!("{:.3}", hits as f64 / known as f64)
        } else {
            "-".to_string()
        };
        writeln!(out, "{n:>5} {p:>6} {:>8} {:>9} {rate:>7}", algo.name(), format!("{hits}/{known}")).unwrap();
    }
    out
}

pub fn experiment(args: &ExperimentArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = experiment_rows(args)?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &rows {
        csv.push_str(&r.csv(args.timing));
        csv.push('\n');
    }
    match &args.out {
        Some(path) => {
            fs::write(path, csv)?;
            out.write_all(summary_table(&rows).as_bytes())?;
        }
        None => {
            out.write_all(csv.as_bytes())?;
            eprint!("{}", summary_table(&rows));
        }
    }
    Ok(())
}

/// Returns whether the labels form a clique; prints the first violating
/// pair when they do not.
pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let g = load(&args.graph, args.format)?;
    let path = args.graph.clone();
    match g.clique_violation(&args.labels) {
        Ok(None) => {
            writeln!(out, "clique of size {}", args.labels.len())?;
            Ok(true)
        }
        Ok(Some((a, b))) => {
            writeln!(out, "not a clique: {a} and {b} are not adjacent")?;
            Ok(false)
        }
        Err(source) => Err(CliError::Graph { path, source }),
    }
}

/// Dispatches a parsed command line; returns the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Generate(a) => generate(a, out).map(|_| 0),
        Command::Solve(a) => solve(a, out).map(|_| 0),
        Command::Experiment(a) => experiment(a, out).map(|_| 0),
        Command::Verify(a) => verify(a, out).map(|ok| if ok { 0 } else { 1 }),
    }
}
