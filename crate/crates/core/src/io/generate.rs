//! Seeded random networks.
//!
//! The generator is PCG-XSL-RR 128/64 (`pcg64`) constructed with
//! `state = seed` and the PCG reference increment
//! `0x2360ed051fc65da44385df649fccf645`. Real draws take the top 53 bits of
//! one output (`(x >> 11) * 2^-53`); index draws use `x % n`. Any port that
//! follows these three rules and the draw order below reproduces the same
//! graphs.
//!
//! Draw order: `K - 1` interior breakpoints, then for every arc its target (or
//! source/target pair), then its length, then its speeds.

use rand_core::RngCore;
use rand_pcg::Pcg64;
use thiserror::Error;

use crate::model::{
    Arc, HorizonPolicy, ModelError, ProfileKind, SpeedProfile, TdGraph, TimeDivision,
};

const PCG_INCREMENT: u128 = 0x2360_ed05_1fc6_5da4_4385_df64_9fcc_f645;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub nodes: usize,
    pub avg_degree: f64,
    pub intervals: usize,
    /// Horizon `T` in seconds.
    pub horizon: f64,
    /// m/s, inclusive.
    pub speed_range: (f64, f64),
    /// meters, inclusive.
    pub length_range: (f64, f64),
    pub kind: ProfileKind,
    pub policy: HorizonPolicy,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            nodes: 16,
            avg_degree: 2.0,
            intervals: 8,
            horizon: 3600.0,
            speed_range: (5.0, 30.0),
            length_range: (100.0, 2000.0),
            kind: ProfileKind::Constant,
            policy: HorizonPolicy::StaticAfterHorizon,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("need at least one node")]
    NoNodes,
    #[error("need at least one interval")]
    NoIntervals,
    #[error("horizon must be positive and finite, got {0}")]
    BadHorizon(f64),
    #[error("average degree must be non-negative and finite, got {0}")]
    BadDegree(f64),
    #[error("degenerate {what} range [{min}, {max}]")]
    BadRange {
        what: &'static str,
        min: f64,
        max: f64,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Deterministic draw source.
pub struct Draws(Pcg64);

impl Draws {
    pub fn new(seed: u64) -> Self {
        Self(Pcg64::new(seed as u128, PCG_INCREMENT))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi]` (up to rounding).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn check_range(what: &'static str, (min, max): (f64, f64)) -> Result<(), GenerateError> {
    if !(min.is_finite() && max.is_finite() && min > 0.0 && min <= max) {
        return Err(GenerateError::BadRange { what, min, max });
    }
    Ok(())
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<(), GenerateError> {
        if self.nodes == 0 {
            return Err(GenerateError::NoNodes);
        }
        if self.intervals == 0 {
            return Err(GenerateError::NoIntervals);
        }
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(GenerateError::BadHorizon(self.horizon));
        }
        if !(self.avg_degree.is_finite() && self.avg_degree >= 0.0) {
            return Err(GenerateError::BadDegree(self.avg_degree));
        }
        check_range("speed", self.speed_range)?;
        check_range("length", self.length_range)
    }
}

/// Breakpoints drawn uniformly in `(0, T)` and sorted; redrawn on collisions.
pub fn random_division(
    draws: &mut Draws,
    intervals: usize,
    horizon: f64,
) -> Result<TimeDivision, ModelError> {
    for _ in 0..64 {
        let mut bps: Vec<f64> = (1..intervals).map(|_| horizon * draws.unit()).collect();
        bps.sort_by(f64::total_cmp);
        bps.insert(0, 0.0);
        bps.push(horizon);
        if let Ok(div) = TimeDivision::new(bps) {
            return Ok(div);
        }
    }
    // only reachable when K is close to the number of representable instants
    TimeDivision::uniform(intervals, horizon)
}

pub fn random_profile(
    draws: &mut Draws,
    kind: ProfileKind,
    policy: HorizonPolicy,
    intervals: usize,
    (lo, hi): (f64, f64),
) -> SpeedProfile {
    match kind {
        ProfileKind::Constant => {
            SpeedProfile::Constant((0..intervals).map(|_| draws.uniform(lo, hi)).collect())
        }
        ProfileKind::Linear => {
            let mut v: Vec<f64> = (0..=intervals).map(|_| draws.uniform(lo, hi)).collect();
            if policy == HorizonPolicy::Periodic {
                v[intervals] = v[0];
            }
            SpeedProfile::Linear(v)
        }
    }
}

pub fn generate(config: &GeneratorConfig) -> Result<TdGraph, GenerateError> {
    config.validate()?;
    let mut draws = Draws::new(config.seed);
    let division = random_division(&mut draws, config.intervals, config.horizon)?;

    let n = config.nodes;
    let max_arcs = n * (n - 1);
    let target = ((config.avg_degree * n as f64).round() as usize).min(max_arcs);
    let mut pairs = Vec::with_capacity(target);
    let mut seen = std::collections::HashSet::with_capacity(target);

    if n >= 2 && config.avg_degree >= 1.0 {
        for from in 0..n {
            let mut to = draws.index(n - 1);
            if to >= from {
                to += 1;
            }
            seen.insert((from, to));
            pairs.push((from, to));
        }
    }
    while pairs.len() < target {
        let from = draws.index(n);
        let to = draws.index(n);
        if from != to && seen.insert((from, to)) {
            pairs.push((from, to));
        }
    }

    let arcs = pairs
        .into_iter()
        .map(|(from, to)| {
            let length = draws.uniform(config.length_range.0, config.length_range.1);
            let profile = random_profile(
                &mut draws,
                config.kind,
                config.policy,
                config.intervals,
                config.speed_range,
            );
            Arc::new(from, to, length, profile)
        })
        .collect();
    Ok(TdGraph::new(n, config.kind, division, config.policy, arcs)?)
}
