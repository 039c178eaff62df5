//! Counter-based benchmark sweep over the number of intervals `K`.
//!
//! Every cell builds one random graph with `K = 2^e` unit-width intervals,
//! rescales its arc lengths, and runs the same batch of single-arc traversal queries under
//! each strategy. Probe counts are the primary measurement; wall time is
//! reported alongside.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use tdroute::io::{generate, Draws, GeneratorConfig};
use tdroute::model::{Arc, HorizonPolicy, ProfileKind, TdGraph, TimeDivision};
use tdroute::routing::{Strategy, Traverser};
use tdroute::traversal::{min_effective_length, AelTable};

pub const CSV_HEADER: &str = "strategy,K,n,m,Q,queries,probes,wall_ns";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// Sweep `K = 2^min_exp ..= 2^max_exp`.
    pub min_exp: u32,
    pub max_exp: u32,
    pub strategies: Vec<Strategy>,
    pub queries: usize,
    pub seed: u64,
    pub nodes: usize,
    pub avg_degree: f64,
    pub policy: HorizonPolicy,
    /// Arc length as a multiple of the arc's shortest effective length.
    pub window: Option<usize>,
    /// Otherwise, arc length as a fraction of one horizon's worth of distance.
    pub span: f64,
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            min_exp: 10,
            max_exp: 20,
            strategies: vec![Strategy::Att, Strategy::Fatt],
            queries: 100,
            seed: 1,
            nodes: 4,
            avg_degree: 1.0,
            policy: HorizonPolicy::StaticAfterHorizon,
            window: None,
            span: 0.5,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub strategy: Strategy,
    pub intervals: usize,
    pub nodes: usize,
    pub arcs: usize,
    /// Largest per-arc window bound, only for the bounded strategy.
    pub q: Option<usize>,
    pub queries: usize,
    pub probes: u64,
    pub wall_ns: u128,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.strategy,
            self.intervals,
            self.nodes,
            self.arcs,
            self.q.map(|q| q.to_string()).unwrap_or_default(),
            self.queries,
            self.probes,
            self.wall_ns
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BenchError {
    Config(String),
    Checksum {
        intervals: usize,
        strategy: Strategy,
        expected: f64,
        found: f64,
    },
    Run(String),
}

impl std::fmt::Display for BenchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchError::Config(msg) => write!(f, "invalid bench configuration: {msg}"),
            BenchError::Checksum {
                intervals,
                strategy,
                expected,
                found,
            } => write!(
                f,
                "checksum mismatch at K={intervals}: {strategy} gave {found}, first strategy gave {expected}"
            ),
            BenchError::Run(msg) => write!(f, "bench failed: {msg}"),
        }
    }
}

impl std::error::Error for BenchError {}

/// Profile kind shared by all requested strategies.
pub fn sweep_kind(strategies: &[Strategy]) -> Result<ProfileKind, BenchError> {
    let first = strategies
        .first()
        .ok_or_else(|| BenchError::Config("no strategies given".into()))?;
    if strategies.iter().any(|s| s.kind() != first.kind()) {
        return Err(BenchError::Config(
            "strategies mix constant and linear profiles".into(),
        ));
    }
    Ok(first.kind())
}

fn validate(config: &BenchConfig) -> Result<ProfileKind, BenchError> {
    let kind = sweep_kind(&config.strategies)?;
    if config.min_exp > config.max_exp {
        return Err(BenchError::Config(format!(
            "empty exponent range {}..{}",
            config.min_exp, config.max_exp
        )));
    }
    if config.max_exp > 24 {
        return Err(BenchError::Config(format!(
            "exponent {} too large (max 24)",
            config.max_exp
        )));
    }
    if config.nodes < 2 {
        return Err(BenchError::Config("need at least two nodes".into()));
    }
    if config.window == Some(0) {
        return Err(BenchError::Config("window must be at least 1".into()));
    }
    if !(config.span > 0.0 && config.span.is_finite()) {
        return Err(BenchError::Config(format!(
            "span must be positive, got {}",
            config.span
        )));
    }
    Ok(kind)
}

fn cell_graph(
    config: &BenchConfig,
    kind: ProfileKind,
    intervals: usize,
    seed: u64,
) -> Result<TdGraph, BenchError> {
    let base = generate(&GeneratorConfig {
        nodes: config.nodes,
        avg_degree: config.avg_degree,
        intervals,
        horizon: intervals as f64,
        kind,
        policy: config.policy,
        seed,
        ..Default::default()
    })
    .map_err(|e| BenchError::Config(e.to_string()))?;
    // unit-width intervals keep the shortest effective length, and with it
    // the window, comparable to a typical interval
    let division = TimeDivision::uniform(intervals, intervals as f64)
        .map_err(|e| BenchError::Run(e.to_string()))?;
    let base = TdGraph::new(
        base.node_count(),
        kind,
        division,
        config.policy,
        base.arcs().to_vec(),
    )
    .map_err(|e| BenchError::Run(e.to_string()))?;
    let ael = AelTable::build(&base);
    let arcs = base
        .arcs()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let row = ael.row(i);
            let length = match config.window {
                Some(q) => q as f64 * min_effective_length(row),
                None => config.span * row[row.len() - 1],
            };
            Arc::new(a.from, a.to, length, a.profile.clone())
        })
        .collect();
    TdGraph::new(
        base.node_count(),
        kind,
        base.division().clone(),
        config.policy,
        arcs,
    )
    .map_err(|e| BenchError::Run(e.to_string()))
}

fn run_cell(
    config: &BenchConfig,
    kind: ProfileKind,
    exp: u32,
) -> Result<Vec<BenchRecord>, BenchError> {
    let intervals = 1usize << exp;
    let seed = config.seed ^ (u64::from(exp) << 56);
    let graph = cell_graph(config, kind, intervals, seed)?;
    let ael = AelTable::build(&graph);
    if graph.arc_count() == 0 {
        return Err(BenchError::Config("generated graph has no arcs".into()));
    }
    let mut draws = Draws::new(seed.wrapping_add(1));
    let horizon = graph.division().horizon();
    let queries: Vec<(usize, f64)> = (0..config.queries)
        .map(|_| (draws.index(graph.arc_count()), draws.uniform(0.0, horizon)))
        .collect();

    let mut records = Vec::new();
    let mut reference: Option<f64> = None;
    for &strategy in &config.strategies {
        let traverser = Traverser::new(&graph, Some(&ael), strategy)
            .map_err(|e| BenchError::Run(e.to_string()))?;
        let mut probes = 0u64;
        let mut checksum = 0.0;
        let start = Instant::now();
        for &(arc, departure) in &queries {
            let r = traverser
                .traverse(arc, departure, None)
                .map_err(|e| BenchError::Run(e.to_string()))?;
            probes += r.work;
            checksum += r.cost;
        }
        let wall_ns = start.elapsed().as_nanos();
        match reference {
            None => reference = Some(checksum),
            Some(expected) => check_checksum(intervals, strategy, expected, checksum)?,
        }
        if config.queries > 0 {
            records.push(BenchRecord {
                strategy,
                intervals,
                nodes: graph.node_count(),
                arcs: graph.arc_count(),
                q: (strategy == Strategy::BoundedFatt)
                    .then(|| ael.max_window_bound())
                    .flatten(),
                queries: config.queries,
                probes,
                wall_ns,
            });
        }
    }
    Ok(records)
}

/// Cost sums of two strategies over the same queries must agree to 1e-9
/// relative.
pub fn check_checksum(
    intervals: usize,
    strategy: Strategy,
    expected: f64,
    found: f64,
) -> Result<(), BenchError> {
    let scale = expected.abs().max(found.abs()).max(f64::MIN_POSITIVE);
    if (expected - found).abs() > 1e-9 * scale {
        return Err(BenchError::Checksum {
            intervals,
            strategy,
            expected,
            found,
        });
    }
    Ok(())
}

/// Runs the sweep. Cells are spread over `config.threads` workers; records
/// come back ordered by `K`, then by the order strategies were given.
pub fn run(config: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    let kind = validate(config)?;
    let exps: Vec<u32> = (config.min_exp..=config.max_exp).collect();
    let threads = config.threads.clamp(1, exps.len());
    let next = AtomicUsize::new(0);

    let mut results: Vec<(usize, Result<Vec<BenchRecord>, BenchError>)> =
        std::thread::scope(|scope| {
            let workers: Vec<_> = (0..threads)
                .map(|_| {
                    scope.spawn(|| {
                        let mut done = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            let Some(&exp) = exps.get(i) else { break };
                            done.push((i, run_cell(config, kind, exp)));
                        }
                        done
                    })
                })
                .collect();
            workers
                .into_iter()
                .flat_map(|w| w.join().expect("bench worker panicked"))
                .collect()
        });
    results.sort_by_key(|(i, _)| *i);

    let mut records = Vec::new();
    for (_, cell) in results {
        records.extend(cell?);
    }
    Ok(records)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Worker count from `TDROUTE_THREADS`, else the available parallelism.
pub fn thread_budget() -> usize {
    std::env::var("TDROUTE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
