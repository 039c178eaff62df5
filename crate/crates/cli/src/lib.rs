//! Command implementations behind the `tdroute` binary.
//!
//! Exit codes: 0 on success, 1 on runtime failures (I/O, bench checksum
//! mismatch), 2 on parse or validation errors, 3 when `--require-reachable`
//! is set and the target cannot be reached.

pub mod bench;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use tdroute::io::{self, GeneratorConfig};
use tdroute::model::{HorizonPolicy, NodeId, ProfileKind, TdGraph};
use tdroute::routing::{search, Strategy, Traverser};
use tdroute::traversal::AelTable;

#[derive(Debug, Parser)]
#[command(
    name = "tdroute",
    version,
    about = "Time-dependent shortest paths over interval speed profiles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Earliest-arrival routing from a source node.
    Route(RouteArgs),
    /// Traversal time of a single arc.
    Att(AttArgs),
    /// Probe-count benchmark sweep over the number of intervals.
    Bench(BenchArgs),
    /// Write a random graph.
    Gen(GenArgs),
    /// Check a graph file and report every problem found.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct RouteArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub source: NodeId,
    /// Report only the path to this node.
    #[arg(long)]
    pub target: Option<NodeId>,
    /// Departure instant in seconds.
    #[arg(long, default_value_t = 0.0)]
    pub departure: f64,
    /// att, fatt, b-fatt, att-linear or l-fatt. Defaults to the fast search
    /// for the graph's profile kind.
    #[arg(long)]
    pub strategy: Option<Strategy>,
    #[arg(long)]
    pub csv: bool,
    /// Exit with status 3 when the target is unreachable.
    #[arg(long, requires = "target")]
    pub require_reachable: bool,
}

#[derive(Debug, Args)]
pub struct AttArgs {
    pub graph: PathBuf,
    /// Arc index in source-sorted order (file order for files written by `gen`).
    #[arg(long)]
    pub arc: usize,
    #[arg(long, default_value_t = 0.0)]
    pub departure: f64,
    #[arg(long)]
    pub strategy: Option<Strategy>,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Smallest exponent e in K = 2^e.
    #[arg(long, default_value_t = 10)]
    pub min_exp: u32,
    /// Largest exponent e in K = 2^e.
    #[arg(long, default_value_t = 20)]
    pub max_exp: u32,
    /// Comma-separated strategies, all of one profile kind.
    #[arg(long, value_delimiter = ',', default_value = "att,fatt")]
    pub strategies: Vec<Strategy>,
    /// Traversal queries per cell.
    #[arg(long, default_value_t = 100)]
    pub queries: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub nodes: usize,
    #[arg(long, default_value_t = 1.0)]
    pub avg_degree: f64,
    #[arg(long, default_value = "static")]
    pub policy: HorizonPolicy,
    /// Set every arc length to Q times its shortest effective length.
    #[arg(long, value_name = "Q")]
    pub window: Option<usize>,
    /// Without --window, arc length as a fraction of one horizon's distance.
    #[arg(long, default_value_t = 0.5)]
    pub span: f64,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 16)]
    pub nodes: usize,
    #[arg(long, default_value_t = 2.0)]
    pub avg_degree: f64,
    #[arg(long, default_value_t = 8)]
    pub intervals: usize,
    /// Horizon T in seconds.
    #[arg(long, default_value_t = 3600.0)]
    pub horizon: f64,
    #[arg(long, default_value_t = 5.0)]
    pub min_speed: f64,
    #[arg(long, default_value_t = 30.0)]
    pub max_speed: f64,
    #[arg(long, default_value_t = 100.0)]
    pub min_length: f64,
    #[arg(long, default_value_t = 2000.0)]
    pub max_length: f64,
    #[arg(long, default_value = "constant")]
    pub kind: ProfileKind,
    #[arg(long, default_value = "static")]
    pub policy: HorizonPolicy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub graph: PathBuf,
}

/// A failed command, carrying its exit status.
#[derive(Debug)]
pub enum Failure {
    Runtime(String),
    Invalid(String),
    /// Carries the route report, which still goes to stdout.
    Unreachable {
        report: String,
        message: String,
    },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Runtime(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Unreachable { .. } => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Runtime(m) | Failure::Invalid(m) | Failure::Unreachable { message: m, .. } => {
                m
            }
        }
    }
}

type CmdResult = Result<String, Failure>;

/// Runs a parsed command. Returns stdout text on success.
pub fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Route(a) => route(&a),
        Command::Att(a) => att(&a),
        Command::Bench(a) => bench_cmd(&a),
        Command::Gen(a) => gen(&a),
        Command::Validate(a) => validate(&a),
    }
}

fn load_graph(path: &Path) -> Result<TdGraph, Failure> {
    io::load(path).map_err(|e| Failure::Invalid(format!("{}:{e}", path.display())))
}

fn pick_strategy(graph: &TdGraph, requested: Option<Strategy>) -> Result<Strategy, Failure> {
    let s = requested.unwrap_or(match graph.kind() {
        ProfileKind::Constant => Strategy::Fatt,
        ProfileKind::Linear => Strategy::LFatt,
    });
    if s.kind() != graph.kind() {
        return Err(Failure::Invalid(format!(
            "strategy {s} needs a {} graph, this one is {}",
            s.kind(),
            graph.kind()
        )));
    }
    Ok(s)
}

fn check_departure(t: f64) -> Result<(), Failure> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Failure::Invalid(format!(
            "departure must be a finite non-negative time, got {t}"
        )))
    }
}

fn check_node(graph: &TdGraph, node: NodeId, what: &str) -> Result<(), Failure> {
    if node < graph.node_count() {
        Ok(())
    } else {
        Err(Failure::Invalid(format!(
            "{what} {node} out of range for {} nodes",
            graph.node_count()
        )))
    }
}

fn route(a: &RouteArgs) -> CmdResult {
    let graph = load_graph(&a.graph)?;
    let strategy = pick_strategy(&graph, a.strategy)?;
    check_departure(a.departure)?;
    check_node(&graph, a.source, "source")?;
    if let Some(t) = a.target {
        check_node(&graph, t, "target")?;
    }
    let ael = AelTable::build(&graph);
    let traverser = Traverser::new(&graph, Some(&ael), strategy)
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    let tree = search(&traverser, a.source, a.departure, a.target)
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let fmt = |x: Option<f64>| x.map(|v| v.to_string());

    let mut out = String::new();
    match a.target {
        None => {
            if a.csv {
                out.push_str("node,arrival,predecessor\n");
            } else {
                out.push_str("node arrival predecessor\n");
            }
            for v in 0..graph.node_count() {
                let arrival = fmt(tree.arrival[v]);
                let pred = tree.predecessor[v].map(|p| p.to_string());
                if a.csv {
                    let _ = writeln!(
                        out,
                        "{v},{},{}",
                        arrival.unwrap_or_default(),
                        pred.unwrap_or_default()
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "{v} {} {}",
                        arrival.unwrap_or_else(|| "unreachable".into()),
                        pred.unwrap_or_else(|| "-".into())
                    );
                }
            }
        }
        Some(target) => {
            let path = tree.path_to(target);
            if a.csv {
                out.push_str("step,node,arrival\n");
                for (step, &v) in path.iter().flatten().enumerate() {
                    let _ = writeln!(
                        out,
                        "{step},{v},{}",
                        fmt(tree.arrival[v]).unwrap_or_default()
                    );
                }
            } else {
                match &path {
                    Some(p) => {
                        let nodes: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                        let _ = writeln!(out, "path {}", nodes.join(" "));
                        let _ =
                            writeln!(out, "arrival {}", tree.arrival[target].unwrap_or(f64::NAN));
                    }
                    None => {
                        out.push_str("path unreachable\narrival unreachable\n");
                    }
                }
            }
            if path.is_none() && a.require_reachable {
                return Err(Failure::Unreachable {
                    message: format!(
                        "node {target} is unreachable from {} at {}",
                        a.source, a.departure
                    ),
                    report: out,
                });
            }
        }
    }
    Ok(out)
}

fn att(a: &AttArgs) -> CmdResult {
    let graph = load_graph(&a.graph)?;
    let strategy = pick_strategy(&graph, a.strategy)?;
    check_departure(a.departure)?;
    if a.arc >= graph.arc_count() {
        return Err(Failure::Invalid(format!(
            "arc {} out of range for {} arcs",
            a.arc,
            graph.arc_count()
        )));
    }
    let ael = AelTable::build(&graph);
    let traverser = Traverser::new(&graph, Some(&ael), strategy)
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    let r = traverser
        .traverse(a.arc, a.departure, None)
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let arc = graph.arc(a.arc);
    let arrival = a.departure + r.cost;
    Ok(if a.csv {
        format!(
            "arc,from,to,departure,cost,arrival,arrival_interval,work\n{},{},{},{},{},{},{},{}\n",
            a.arc, arc.from, arc.to, a.departure, r.cost, arrival, r.arrival_interval, r.work
        )
    } else {
        format!(
            "arc {} ({} -> {})\ndeparture {}\ncost {}\narrival {}\narrival_interval {}\nwork {}\n",
            a.arc, arc.from, arc.to, a.departure, r.cost, arrival, r.arrival_interval, r.work
        )
    })
}

fn bench_cmd(a: &BenchArgs) -> CmdResult {
    let config = bench::BenchConfig {
        min_exp: a.min_exp,
        max_exp: a.max_exp,
        strategies: a.strategies.clone(),
        queries: a.queries,
        seed: a.seed,
        nodes: a.nodes,
        avg_degree: a.avg_degree,
        policy: a.policy,
        window: a.window,
        span: a.span,
        threads: bench::thread_budget(),
    };
    let records = bench::run(&config).map_err(|e| match e {
        bench::BenchError::Config(_) => Failure::Invalid(e.to_string()),
        _ => Failure::Runtime(e.to_string()),
    })?;
    let csv = bench::to_csv(&records);
    write_or_return(a.out.as_deref(), csv)
}

fn write_or_return(path: Option<&Path>, text: String) -> CmdResult {
    match path {
        Some(p) => {
            std::fs::write(p, text)
                .map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn gen(a: &GenArgs) -> CmdResult {
    let config = GeneratorConfig {
        nodes: a.nodes,
        avg_degree: a.avg_degree,
        intervals: a.intervals,
        horizon: a.horizon,
        speed_range: (a.min_speed, a.max_speed),
        length_range: (a.min_length, a.max_length),
        kind: a.kind,
        policy: a.policy,
        seed: a.seed,
    };
    let graph = io::generate(&config).map_err(|e| Failure::Invalid(e.to_string()))?;
    write_or_return(a.out.as_deref(), io::write_graph(&graph))
}

fn validate(a: &ValidateArgs) -> CmdResult {
    let text = std::fs::read_to_string(&a.graph)
        .map_err(|e| Failure::Invalid(format!("{}: cannot read file: {e}", a.graph.display())))?;
    let errors = io::validate_text(&text);
    if errors.is_empty() {
        let g = io::parse_graph(&text).map_err(|e| Failure::Invalid(e.to_string()))?;
        return Ok(format!(
            "ok: {} nodes, {} arcs, {} intervals, {} {}\n",
            g.node_count(),
            g.arc_count(),
            g.division().intervals(),
            g.kind(),
            g.policy()
        ));
    }
    let mut msg = String::new();
    for e in &errors {
        let _ = writeln!(msg, "{}:{e}", a.graph.display());
    }
    msg.pop();
    Err(Failure::Invalid(msg))
}

/// Prints the outcome and returns the process exit status.
pub fn report(result: CmdResult) -> u8 {
    let emit = |text: &str| {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .is_ok()
    };
    match result {
        Ok(text) => {
            if emit(&text) {
                0
            } else {
                1
            }
        }
        Err(f) => {
            if let Failure::Unreachable { report, .. } = &f {
                emit(report);
            }
            eprintln!("tdroute: {}", f.message());
            f.exit_code()
        }
    }
}
