//! Test-only oracles and random case builders.
#![allow(dead_code)]

pub mod fuzz;

use tdroute::io::{random_division, random_profile, Draws, GeneratorConfig};
use tdroute::model::{
    Arc, HorizonPolicy, NodeId, ProfileKind, SpeedProfile, TdGraph, TimeDivision,
};
use tdroute::traversal::{att, att_linear, prefix_sums};

pub const REL_TOL: f64 = 1e-9;

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= tol * scale.max(f64::MIN_POSITIVE)
}

/// One arc with its division and policy, ready for single-arc procedures.
#[derive(Debug, Clone)]
pub struct ArcCase {
    pub arc: Arc,
    pub division: TimeDivision,
    pub policy: HorizonPolicy,
    pub departure: f64,
}

impl ArcCase {
    pub fn prefix(&self) -> Vec<f64> {
        prefix_sums(&self.arc.profile, &self.division)
    }
}

pub fn policy_for(draws: &mut Draws) -> HorizonPolicy {
    if draws.index(2) == 0 {
        HorizonPolicy::StaticAfterHorizon
    } else {
        HorizonPolicy::Periodic
    }
}

/// Random arc whose length ranges from a sliver of the first interval to
/// about three horizons worth of distance, departing anywhere in `[0, 2T)`.
pub fn random_arc_case(
    draws: &mut Draws,
    kind: ProfileKind,
    policy: HorizonPolicy,
    max_k: usize,
) -> ArcCase {
    let k = 1 + draws.index(max_k);
    let horizon = draws.uniform(10.0, 1000.0);
    let division = random_division(draws, k, horizon).unwrap();
    let profile = random_profile(draws, kind, policy, k, (1.0, 30.0));
    let per_period = *prefix_sums(&profile, &division).last().unwrap();
    let length = per_period * draws.uniform(0.001, 3.0);
    let departure = draws.uniform(0.0, 2.0 * horizon);
    ArcCase {
        arc: Arc::new(0, 1, length, profile),
        division,
        policy,
        departure,
    }
}

/// Sequential reference cost of an arc for either profile kind.
pub fn reference_cost(
    arc: &Arc,
    division: &TimeDivision,
    policy: HorizonPolicy,
    departure: f64,
) -> f64 {
    match arc.profile {
        SpeedProfile::Constant(_) => att(arc, division, policy, departure, None).unwrap().cost,
        SpeedProfile::Linear(_) => {
            att_linear(arc, division, policy, departure, None)
                .unwrap()
                .cost
        }
    }
}

/// Earliest arrival at every node over all simple paths, by exhaustive
/// depth-first enumeration with the sequential traversal procedure.
pub fn enumerate_arrivals(graph: &TdGraph, source: NodeId, departure: f64) -> Vec<Option<f64>> {
    fn walk(
        graph: &TdGraph,
        node: NodeId,
        time: f64,
        on_path: &mut [bool],
        best: &mut [Option<f64>],
    ) {
        if best[node].is_none_or(|b| time < b) {
            best[node] = Some(time);
        }
        on_path[node] = true;
        for (_, arc) in graph.out_arcs(node) {
            if !on_path[arc.to] {
                let t = time + reference_cost(arc, graph.division(), graph.policy(), time);
                walk(graph, arc.to, t, on_path, best);
            }
        }
        on_path[node] = false;
    }
    let n = graph.node_count();
    let mut best = vec![None; n];
    walk(graph, source, departure, &mut vec![false; n], &mut best);
    best
}

/// Small random graph in the size range where enumeration stays cheap.
pub fn small_graph(draws: &mut Draws, kind: ProfileKind, policy: HorizonPolicy) -> TdGraph {
    let nodes = 2 + draws.index(11);
    let cfg = GeneratorConfig {
        nodes,
        avg_degree: draws.uniform(1.0, 2.5),
        intervals: 1 + draws.index(8),
        horizon: draws.uniform(50.0, 500.0),
        speed_range: (1.0, 30.0),
        length_range: (10.0, 3000.0),
        kind,
        policy,
        seed: draws.next_u64(),
    };
    tdroute::io::generate(&cfg).unwrap()
}
