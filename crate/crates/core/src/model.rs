//! Time-dependent network representation.
//!
//! Every arc shares one [`TimeDivision`] of the measured horizon `[0, T)`.
//! Speeds are either constant inside each interval or interpolated linearly
//! between the values measured at the breakpoints. Outside the horizon the
//! [`HorizonPolicy`] decides what the speed is.

use thiserror::Error;

pub type NodeId = usize;

/// Tolerance used when checking that a periodic linear profile closes on itself.
pub const PERIODIC_CLOSURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("negative time instant {0}")]
    NegativeTime(f64),
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("time division needs at least one interval")]
    NoIntervals,
    #[error("first breakpoint must be 0, got {0}")]
    NonZeroOrigin(f64),
    #[error("non-increasing breakpoints at index {index}")]
    NonIncreasingBreakpoints { index: usize },
    #[error("non-positive speed {value} at index {index}")]
    NonPositiveSpeed { index: usize, value: f64 },
    #[error("non-positive length {0}")]
    NonPositiveLength(f64),
    #[error("{kind} profile needs {expected} speeds, got {found}")]
    ProfileLength {
        kind: ProfileKind,
        expected: usize,
        found: usize,
    },
    #[error("periodic linear profile must satisfy v_0 = v_K (got {first} and {last})")]
    PeriodicMismatch { first: f64, last: f64 },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("node {node} out of range for {nodes} nodes")]
    NodeOutOfRange { node: NodeId, nodes: usize },
    #[error("duplicate arc {from} -> {to}")]
    DuplicateArc { from: NodeId, to: NodeId },
    #[error("arc profile is {found} but graph is {expected}")]
    KindMismatch {
        expected: ProfileKind,
        found: ProfileKind,
    },
    #[error("interval index {index} out of range for {intervals} intervals")]
    IntervalOutOfRange { index: usize, intervals: usize },
}

/// Breakpoints `0 = τ_0 < τ_1 < ... < τ_K = T`, shared by every arc.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeDivision {
    breakpoints: Vec<f64>,
}

impl TimeDivision {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self, ModelError> {
        if breakpoints.len() < 2 {
            return Err(ModelError::NoIntervals);
        }
        if let Some(&bad) = breakpoints.iter().find(|b| !b.is_finite()) {
            return Err(ModelError::NonFinite(bad));
        }
        if breakpoints[0] != 0.0 {
            return Err(ModelError::NonZeroOrigin(breakpoints[0]));
        }
        if let Some(i) = breakpoints.windows(2).position(|w| w[0] >= w[1]) {
            return Err(ModelError::NonIncreasingBreakpoints { index: i + 1 });
        }
        Ok(Self { breakpoints })
    }

    /// `K + 1` equally spaced breakpoints over `[0, horizon]`.
    pub fn uniform(intervals: usize, horizon: f64) -> Result<Self, ModelError> {
        let step = horizon / intervals as f64;
        let mut bps: Vec<f64> = (0..intervals).map(|k| k as f64 * step).collect();
        bps.push(horizon);
        Self::new(bps)
    }

    /// Number of intervals `K`.
    #[inline]
    pub fn intervals(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// Horizon `T = τ_K`.
    #[inline]
    pub fn horizon(&self) -> f64 {
        self.breakpoints[self.breakpoints.len() - 1]
    }

    #[inline]
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// `τ_k`
    #[inline]
    pub fn start(&self, k: usize) -> f64 {
        self.breakpoints[k]
    }

    /// `τ_{k+1}`
    #[inline]
    pub fn end(&self, k: usize) -> f64 {
        self.breakpoints[k + 1]
    }

    #[inline]
    pub fn width(&self, k: usize) -> f64 {
        self.breakpoints[k + 1] - self.breakpoints[k]
    }

    /// Index `k` with `τ_k <= t < τ_{k+1}`; instants at or past `T` map to `K - 1`.
    ///
    /// `t` is expected to be already mapped by the horizon policy.
    pub fn locate(&self, t: f64) -> usize {
        // partition_point returns the first breakpoint > t
        let upper = self.breakpoints.partition_point(|&b| b <= t);
        upper.saturating_sub(1).min(self.intervals() - 1)
    }

    /// Like [`locate`](Self::locate), but confirms `hint` first in O(1).
    #[inline]
    pub fn locate_with_hint(&self, t: f64, hint: Option<usize>) -> usize {
        if let Some(h) = hint {
            if h < self.intervals() && self.breakpoints[h] <= t && t < self.breakpoints[h + 1] {
                return h;
            }
        }
        self.locate(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// One speed per interval.
    Constant,
    /// One speed per breakpoint, linear in between.
    Linear,
}

impl std::fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProfileKind::Constant => "constant",
            ProfileKind::Linear => "linear",
        })
    }
}

impl std::str::FromStr for ProfileKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "constant" => Ok(ProfileKind::Constant),
            "linear" => Ok(ProfileKind::Linear),
            other => Err(format!(
                "unknown profile kind '{other}' (expected constant or linear)"
            )),
        }
    }
}

/// What the speed is for instants `t >= T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HorizonPolicy {
    /// The network freezes at its last measured state.
    StaticAfterHorizon,
    /// Speeds repeat with period `T`.
    Periodic,
}

impl std::fmt::Display for HorizonPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HorizonPolicy::StaticAfterHorizon => "static",
            HorizonPolicy::Periodic => "periodic",
        })
    }
}

impl std::str::FromStr for HorizonPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "static" => Ok(HorizonPolicy::StaticAfterHorizon),
            "periodic" => Ok(HorizonPolicy::Periodic),
            other => Err(format!(
                "unknown horizon policy '{other}' (expected static or periodic)"
            )),
        }
    }
}

/// Reduce `t` into `[0, T)` for a periodic horizon.
#[inline]
pub fn wrap_periodic(t: f64, horizon: f64) -> f64 {
    let r = t.rem_euclid(horizon);
    if r >= horizon {
        0.0
    } else {
        r
    }
}

/// Time-instant mapping under a horizon policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MappedTime {
    /// Inside `[0, T)` (possibly after periodic reduction).
    Within(f64),
    /// Static policy and `t >= T`.
    Beyond,
}

pub fn map_time(division: &TimeDivision, policy: HorizonPolicy, t: f64) -> MappedTime {
    let horizon = division.horizon();
    if t < horizon {
        return MappedTime::Within(t);
    }
    match policy {
        HorizonPolicy::StaticAfterHorizon => MappedTime::Beyond,
        HorizonPolicy::Periodic => MappedTime::Within(wrap_periodic(t, horizon)),
    }
}

/// Interval index of `t` after applying the horizon policy.
pub fn locate_interval(
    division: &TimeDivision,
    policy: HorizonPolicy,
    t: f64,
    hint: Option<usize>,
) -> Result<usize, ModelError> {
    check_instant(t)?;
    Ok(match map_time(division, policy, t) {
        MappedTime::Within(t) => division.locate_with_hint(t, hint),
        MappedTime::Beyond => division.intervals() - 1,
    })
}

pub(crate) fn check_instant(t: f64) -> Result<(), ModelError> {
    if !t.is_finite() {
        return Err(ModelError::NonFinite(t));
    }
    if t < 0.0 {
        return Err(ModelError::NegativeTime(t));
    }
    Ok(())
}

/// Speeds of one arc over the shared time division.
#[derive(Debug, Clone, PartialEq)]
pub enum SpeedProfile {
    /// `v_k` for interval `[τ_k, τ_{k+1})`; `K` values.
    Constant(Vec<f64>),
    /// `v_k` measured at breakpoint `τ_k`; `K + 1` values.
    Linear(Vec<f64>),
}

impl SpeedProfile {
    pub fn kind(&self) -> ProfileKind {
        match self {
            SpeedProfile::Constant(_) => ProfileKind::Constant,
            SpeedProfile::Linear(_) => ProfileKind::Linear,
        }
    }

    pub fn values(&self) -> &[f64] {
        match self {
            SpeedProfile::Constant(v) | SpeedProfile::Linear(v) => v,
        }
    }

    pub fn validate(
        &self,
        division: &TimeDivision,
        policy: HorizonPolicy,
    ) -> Result<(), ModelError> {
        let k = division.intervals();
        let expected = match self.kind() {
            ProfileKind::Constant => k,
            ProfileKind::Linear => k + 1,
        };
        let values = self.values();
        if values.len() != expected {
            return Err(ModelError::ProfileLength {
                kind: self.kind(),
                expected,
                found: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(ModelError::NonFinite(value));
            }
            if value <= 0.0 {
                return Err(ModelError::NonPositiveSpeed { index, value });
            }
        }
        if let (SpeedProfile::Linear(v), HorizonPolicy::Periodic) = (self, policy) {
            let (first, last) = (v[0], v[k]);
            if (first - last).abs() > PERIODIC_CLOSURE_TOL {
                return Err(ModelError::PeriodicMismatch { first, last });
            }
        }
        Ok(())
    }

    /// Speed at an instant already mapped into `[0, T)`, inside interval `k`.
    #[inline]
    pub(crate) fn speed_in(&self, division: &TimeDivision, k: usize, t: f64) -> f64 {
        match self {
            SpeedProfile::Constant(v) => v[k],
            SpeedProfile::Linear(v) => {
                let slope = (v[k + 1] - v[k]) / division.width(k);
                v[k] + slope * (t - division.start(k))
            }
        }
    }

    /// Speed that holds for every `t >= T` under the static policy.
    #[inline]
    pub(crate) fn tail_speed(&self) -> f64 {
        let v = self.values();
        v[v.len() - 1]
    }
}

/// Directed road segment `<from, to>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub from: NodeId,
    pub to: NodeId,
    /// Meters.
    pub length: f64,
    pub profile: SpeedProfile,
}

impl Arc {
    pub fn new(from: NodeId, to: NodeId, length: f64, profile: SpeedProfile) -> Self {
        Self {
            from,
            to,
            length,
            profile,
        }
    }
}

/// Immutable time-dependent digraph with arcs grouped by source node.
#[derive(Debug, Clone, PartialEq)]
pub struct TdGraph {
    node_count: usize,
    arcs: Vec<Arc>,
    first_out: Vec<usize>,
    division: TimeDivision,
    policy: HorizonPolicy,
    kind: ProfileKind,
}

impl TdGraph {
    /// Validates every arc and groups arcs by source. Arcs sharing a source keep
    /// their relative order, so arc indices match the input order whenever the
    /// input is already grouped.
    pub fn new(
        node_count: usize,
        kind: ProfileKind,
        division: TimeDivision,
        policy: HorizonPolicy,
        mut arcs: Vec<Arc>,
    ) -> Result<Self, ModelError> {
        for arc in &arcs {
            validate_arc(arc, node_count, kind, &division, policy)?;
        }
        arcs.sort_by_key(|a| a.from);
        let mut first_out = vec![0usize; node_count + 1];
        for arc in &arcs {
            first_out[arc.from + 1] += 1;
        }
        for i in 0..node_count {
            first_out[i + 1] += first_out[i];
        }
        for x in 0..node_count {
            let out = &arcs[first_out[x]..first_out[x + 1]];
            for (i, a) in out.iter().enumerate() {
                if out[..i].iter().any(|b| b.to == a.to) {
                    return Err(ModelError::DuplicateArc {
                        from: a.from,
                        to: a.to,
                    });
                }
            }
        }
        Ok(Self {
            node_count,
            arcs,
            first_out,
            division,
            policy,
            kind,
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    #[inline]
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    #[inline]
    pub fn arc(&self, index: usize) -> &Arc {
        &self.arcs[index]
    }

    #[inline]
    pub fn division(&self) -> &TimeDivision {
        &self.division
    }

    #[inline]
    pub fn policy(&self) -> HorizonPolicy {
        self.policy
    }

    #[inline]
    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Arc indices leaving `node`.
    #[inline]
    pub fn out_range(&self, node: NodeId) -> std::ops::Range<usize> {
        self.first_out[node]..self.first_out[node + 1]
    }

    /// Arcs leaving `node` together with their indices.
    pub fn out_arcs(&self, node: NodeId) -> impl Iterator<Item = (usize, &Arc)> + '_ {
        let range = self.out_range(node);
        let start = range.start;
        self.arcs[range]
            .iter()
            .enumerate()
            .map(move |(i, a)| (start + i, a))
    }

    #[inline]
    pub fn out_degree(&self, node: NodeId) -> usize {
        self.first_out[node + 1] - self.first_out[node]
    }

    /// Speed on `arc` at instant `t` under the graph's horizon policy.
    pub fn speed_at(&self, arc: &Arc, t: f64) -> Result<f64, ModelError> {
        speed_at(arc, &self.division, self.policy, t)
    }
}

pub fn validate_arc(
    arc: &Arc,
    node_count: usize,
    kind: ProfileKind,
    division: &TimeDivision,
    policy: HorizonPolicy,
) -> Result<(), ModelError> {
    for node in [arc.from, arc.to] {
        if node >= node_count {
            return Err(ModelError::NodeOutOfRange {
                node,
                nodes: node_count,
            });
        }
    }
    if arc.from == arc.to {
        return Err(ModelError::SelfLoop(arc.from));
    }
    if !arc.length.is_finite() {
        return Err(ModelError::NonFinite(arc.length));
    }
    if arc.length <= 0.0 {
        return Err(ModelError::NonPositiveLength(arc.length));
    }
    if arc.profile.kind() != kind {
        return Err(ModelError::KindMismatch {
            expected: kind,
            found: arc.profile.kind(),
        });
    }
    arc.profile.validate(division, policy)
}

/// Speed of `arc` at instant `t >= 0`.
pub fn speed_at(
    arc: &Arc,
    division: &TimeDivision,
    policy: HorizonPolicy,
    t: f64,
) -> Result<f64, ModelError> {
    check_instant(t)?;
    Ok(match map_time(division, policy, t) {
        MappedTime::Within(t) => arc.profile.speed_in(division, division.locate(t), t),
        MappedTime::Beyond => arc.profile.tail_speed(),
    })
}
