//! Time-dependent shortest paths on road networks whose speeds vary per time
//! interval.
//!
//! * [`model`]: time division, speed profiles, graph, horizon policy.
//! * [`traversal`]: arc traversal time, sequential and O(log K) procedures.
//! * [`routing`]: label-setting one-to-all and point-to-point queries.
//! * [`io`]: text graph format, worked-example fixture, random generator.

pub mod io;
pub mod model;
pub mod routing;
pub mod traversal;

pub use model::{Arc, HorizonPolicy, NodeId, ProfileKind, SpeedProfile, TdGraph, TimeDivision};

pub use routing::{shortest_path_to, shortest_paths, PathResult, RouteResult, Strategy};
pub use traversal::{AelTable, TraversalResult};
