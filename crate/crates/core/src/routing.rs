//! Label-setting (Dijkstra) search over a [`TdGraph`] with a pluggable arc
//! traversal procedure.
//!
//! Relaxing `<x, y>` evaluates the traversal time at the departure instant
//! `W(x)`; FIFO arcs make the first settled label of every node optimal.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{locate_interval, NodeId, ProfileKind, TdGraph};
use crate::traversal::{self, AelTable, TraversalError, TraversalResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Sequential scan, constant speeds.
    Att,
    /// Binary search over prefix sums, constant speeds.
    Fatt,
    /// Binary search confined to each arc's window bound `Q`.
    BoundedFatt,
    /// Sequential scan, linear speeds.
    AttLinear,
    /// Binary search over prefix sums, linear speeds.
    LFatt,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Att,
        Strategy::Fatt,
        Strategy::BoundedFatt,
        Strategy::AttLinear,
        Strategy::LFatt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Att => "att",
            Strategy::Fatt => "fatt",
            Strategy::BoundedFatt => "b-fatt",
            Strategy::AttLinear => "att-linear",
            Strategy::LFatt => "l-fatt",
        }
    }

    pub fn kind(self) -> ProfileKind {
        match self {
            Strategy::Att | Strategy::Fatt | Strategy::BoundedFatt => ProfileKind::Constant,
            Strategy::AttLinear | Strategy::LFatt => ProfileKind::Linear,
        }
    }

    pub fn needs_ael(self) -> bool {
        !matches!(self, Strategy::Att | Strategy::AttLinear)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| {
                format!("unknown strategy '{s}' (expected att, fatt, b-fatt, att-linear or l-fatt)")
            })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RouteError {
    #[error("node {node} out of range for {nodes} nodes")]
    InvalidNode { node: NodeId, nodes: usize },
    #[error("strategy {strategy} needs {expected} profiles but the graph is {found}")]
    StrategyMismatch {
        strategy: Strategy,
        expected: ProfileKind,
        found: ProfileKind,
    },
    #[error("strategy {0} needs an AEL table")]
    MissingAel(Strategy),
    #[error("AEL table was built for a different graph")]
    AelMismatch,
    #[error("arc index {index} out of range for {arcs} arcs")]
    InvalidArc { index: usize, arcs: usize },
    #[error(transparent)]
    Traversal(#[from] TraversalError),
}

/// Binds a graph, its optional AEL table and a strategy into a single arc
/// cost oracle.
#[derive(Debug, Clone, Copy)]
pub struct Traverser<'a> {
    graph: &'a TdGraph,
    ael: Option<&'a AelTable>,
    strategy: Strategy,
}

impl<'a> Traverser<'a> {
    pub fn new(
        graph: &'a TdGraph,
        ael: Option<&'a AelTable>,
        strategy: Strategy,
    ) -> Result<Self, RouteError> {
        if strategy.kind() != graph.kind() {
            return Err(RouteError::StrategyMismatch {
                strategy,
                expected: strategy.kind(),
                found: graph.kind(),
            });
        }
        if strategy.needs_ael() {
            match ael {
                None => return Err(RouteError::MissingAel(strategy)),
                Some(t) if !t.matches(graph) => return Err(RouteError::AelMismatch),
                Some(_) => {}
            }
        }
        Ok(Self {
            graph,
            ael,
            strategy,
        })
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn graph(&self) -> &'a TdGraph {
        self.graph
    }

    /// Traversal of arc `index` departing at `departure`.
    pub fn traverse(
        &self,
        index: usize,
        departure: f64,
        hint: Option<usize>,
    ) -> Result<TraversalResult, RouteError> {
        if index >= self.graph.arc_count() {
            return Err(RouteError::InvalidArc {
                index,
                arcs: self.graph.arc_count(),
            });
        }
        let arc = self.graph.arc(index);
        let div = self.graph.division();
        let policy = self.graph.policy();
        let row = || self.ael.map(|t| t.row(index)).unwrap_or(&[]);
        let r = match self.strategy {
            Strategy::Att => traversal::att(arc, div, policy, departure, hint),
            Strategy::AttLinear => traversal::att_linear(arc, div, policy, departure, hint),
            Strategy::Fatt => traversal::fatt(arc, row(), div, policy, departure, hint),
            Strategy::LFatt => traversal::l_fatt(arc, row(), div, policy, departure, hint),
            Strategy::BoundedFatt => {
                let q = self.ael.map_or(1, |t| t.window_bound(index));
                traversal::bounded_fatt(arc, row(), div, policy, departure, q, hint)
            }
        }?;
        Ok(r)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RouteStats {
    pub settled: usize,
    /// Traversal procedure invocations.
    pub traversals: u64,
    /// Interval steps (sequential strategies) or AEL probes (searched ones).
    pub work: u64,
}

/// Shortest-path tree from one source at one departure instant.
#[derive(Debug, Clone, PartialEq)]
pub struct RouteResult {
    pub source: NodeId,
    pub departure: f64,
    /// Earliest arrival per node, `None` when unreachable.
    pub arrival: Vec<Option<f64>>,
    pub predecessor: Vec<Option<NodeId>>,
    pub stats: RouteStats,
}

impl RouteResult {
    /// Node sequence from the source to `target`, if reachable.
    pub fn path_to(&self, target: NodeId) -> Option<Vec<NodeId>> {
        self.arrival.get(target).copied().flatten()?;
        let mut path = vec![target];
        let mut cur = target;
        while cur != self.source {
            cur = self.predecessor[cur]?;
            path.push(cur);
            if path.len() > self.arrival.len() {
                return None;
            }
        }
        path.reverse();
        Some(path)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    /// `None` when the target cannot be reached.
    pub path: Option<Vec<NodeId>>,
    pub arrival: Option<f64>,
    pub stats: RouteStats,
}

impl PathResult {
    pub fn is_reachable(&self) -> bool {
        self.arrival.is_some()
    }
}

#[derive(Debug, Clone, Copy)]
struct QueueEntry {
    label: f64,
    node: NodeId,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    // reversed: BinaryHeap is a max-heap, we want the smallest label and then
    // the lowest node id on top
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .label
            .total_cmp(&self.label)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One-to-all earliest arrival times from `source` departing at `departure`.
pub fn shortest_paths(
    graph: &TdGraph,
    ael: Option<&AelTable>,
    source: NodeId,
    departure: f64,
    strategy: Strategy,
) -> Result<RouteResult, RouteError> {
    let traverser = Traverser::new(graph, ael, strategy)?;
    search(&traverser, source, departure, None)
}

/// Point-to-point query; stops once `target` is settled.
pub fn shortest_path_to(
    graph: &TdGraph,
    ael: Option<&AelTable>,
    source: NodeId,
    target: NodeId,
    departure: f64,
    strategy: Strategy,
) -> Result<PathResult, RouteError> {
    check_node(graph, target)?;
    let traverser = Traverser::new(graph, ael, strategy)?;
    let tree = search(&traverser, source, departure, Some(target))?;
    Ok(PathResult {
        path: tree.path_to(target),
        arrival: tree.arrival[target],
        stats: tree.stats,
    })
}

fn check_node(graph: &TdGraph, node: NodeId) -> Result<(), RouteError> {
    if node >= graph.node_count() {
        return Err(RouteError::InvalidNode {
            node,
            nodes: graph.node_count(),
        });
    }
    Ok(())
}

/// Core label-setting loop shared by the one-to-all and point-to-point queries.
pub fn search(
    traverser: &Traverser<'_>,
    source: NodeId,
    departure: f64,
    target: Option<NodeId>,
) -> Result<RouteResult, RouteError> {
    let graph = traverser.graph();
    check_node(graph, source)?;
    let source_hint = locate_interval(graph.division(), graph.policy(), departure, None)
        .map_err(TraversalError::from)?;

    let n = graph.node_count();
    let mut label = vec![f64::INFINITY; n];
    let mut predecessor = vec![None; n];
    let mut settled = vec![false; n];
    let mut hint: Vec<Option<usize>> = vec![None; n];
    let mut stats = RouteStats::default();
    let mut queue = BinaryHeap::new();

    label[source] = departure;
    hint[source] = Some(source_hint);
    queue.push(QueueEntry {
        label: departure,
        node: source,
    });

    let mut last_settled = departure;
    while let Some(QueueEntry { label: w, node: x }) = queue.pop() {
        if settled[x] || w != label[x] {
            continue;
        }
        debug_assert!(w >= last_settled, "settled {x} at {w} after {last_settled}");
        last_settled = w;
        settled[x] = true;
        stats.settled += 1;
        if target == Some(x) {
            break;
        }
        for index in graph.out_range(x) {
            let y = graph.arc(index).to;
            if settled[y] {
                continue;
            }
            let r = traverser.traverse(index, w, hint[x])?;
            stats.traversals += 1;
            stats.work += r.work;
            let candidate = w + r.cost;
            if candidate < label[y] {
                label[y] = candidate;
                predecessor[y] = Some(x);
                hint[y] = Some(r.arrival_interval);
                queue.push(QueueEntry {
                    label: candidate,
                    node: y,
                });
            }
        }
    }

    let arrival = label
        .into_iter()
        .map(|w| w.is_finite().then_some(w))
        .collect();
    Ok(RouteResult {
        source,
        departure,
        arrival,
        predecessor,
        stats,
    })
}
