//! Small hand-built networks with known answers.

use crate::model::{Arc, HorizonPolicy, ProfileKind, SpeedProfile, TdGraph, TimeDivision};

/// One arc `0 -> 1` of 170 m over intervals `[0,10) [10,15) [15,30) [30,40)`
/// at 10, 6, 8 and 10 m/s. Departing at 6 s it takes 21.5 s.
pub const WORKED_EXAMPLE: &str = "\
# single arc, four speed intervals
tdgraph 1 constant static
division 4 0 10 15 30 40
nodes 2
arcs 1
arc 0 1 170 10 6 8 10
";

pub fn worked_example_division() -> TimeDivision {
    TimeDivision::new(vec![0.0, 10.0, 15.0, 30.0, 40.0]).expect("valid breakpoints")
}

pub fn worked_example_profile() -> SpeedProfile {
    SpeedProfile::Constant(vec![10.0, 6.0, 8.0, 10.0])
}

pub fn worked_example() -> TdGraph {
    TdGraph::new(
        2,
        ProfileKind::Constant,
        worked_example_division(),
        HorizonPolicy::StaticAfterHorizon,
        vec![Arc::new(0, 1, 170.0, worked_example_profile())],
    )
    .expect("valid fixture")
}

/// `0 -> 1` as in [`worked_example`], `1 -> 2` 30 m at 10 m/s, and a 10 km
/// direct arc `0 -> 2` at 10 m/s. Departing node 0 at 6 s reaches node 2 at
/// 30.5 s through node 1.
pub fn three_node_example() -> TdGraph {
    let flat = || SpeedProfile::Constant(vec![10.0; 4]);
    TdGraph::new(
        3,
        ProfileKind::Constant,
        worked_example_division(),
        HorizonPolicy::StaticAfterHorizon,
        vec![
            Arc::new(0, 1, 170.0, worked_example_profile()),
            Arc::new(0, 2, 10000.0, flat()),
            Arc::new(1, 2, 30.0, flat()),
        ],
    )
    .expect("valid fixture")
}

/// The worked example expressed as a linear profile whose breakpoint speeds
/// are all equal to `speed`.
pub fn flat_linear(
    length: f64,
    speed: f64,
    division: TimeDivision,
    policy: HorizonPolicy,
) -> TdGraph {
    let k = division.intervals();
    TdGraph::new(
        2,
        ProfileKind::Linear,
        division,
        policy,
        vec![Arc::new(
            0,
            1,
            length,
            SpeedProfile::Linear(vec![speed; k + 1]),
        )],
    )
    .expect("valid fixture")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_graph;

    #[test]
    fn text_and_struct_agree() {
        assert_eq!(parse_graph(WORKED_EXAMPLE).unwrap(), worked_example());
    }
}
