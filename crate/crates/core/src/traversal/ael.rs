//! Effective lengths and their per-arc prefix sums.

use super::TraversalError;
use crate::model::{Arc, ModelError, ProfileKind, SpeedProfile, TdGraph, TimeDivision};

/// `g_k(t) = slope * t + intercept` on interval `k` of a linear profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearCoeffs {
    /// m/s²
    pub slope: f64,
    /// m/s
    pub intercept: f64,
}

impl LinearCoeffs {
    #[inline]
    pub fn speed(&self, t: f64) -> f64 {
        self.slope * t + self.intercept
    }

    /// Antiderivative `G_k(t) = slope t²/2 + intercept t`.
    #[inline]
    pub fn antiderivative(&self, t: f64) -> f64 {
        self.slope * t * t / 2.0 + self.intercept * t
    }
}

/// Slope/intercept form of every interval of a linear profile.
pub fn linear_coeffs(speeds: &[f64], division: &TimeDivision) -> Vec<LinearCoeffs> {
    (0..division.intervals())
        .map(|k| {
            let (t0, t1) = (division.start(k), division.end(k));
            let (v0, v1) = (speeds[k], speeds[k + 1]);
            let width = t1 - t0;
            LinearCoeffs {
                slope: (v1 - v0) / width,
                intercept: (v0 * t1 - v1 * t0) / width,
            }
        })
        .collect()
}

/// Distance traversable on `arc` during interval `k`.
pub fn effective_length(
    arc: &Arc,
    division: &TimeDivision,
    k: usize,
) -> Result<f64, TraversalError> {
    let intervals = division.intervals();
    if k >= intervals {
        return Err(ModelError::IntervalOutOfRange {
            index: k,
            intervals,
        }
        .into());
    }
    Ok(interval_length(&arc.profile, division, k))
}

#[inline]
pub(crate) fn interval_length(profile: &SpeedProfile, division: &TimeDivision, k: usize) -> f64 {
    match profile {
        SpeedProfile::Constant(v) => v[k] * division.width(k),
        // exact integral of a linear speed; avoids the t² cancellation of G(τ_{k+1}) - G(τ_k)
        SpeedProfile::Linear(v) => division.width(k) * (v[k] + v[k + 1]) / 2.0,
    }
}

/// `L_0..L_{K-1}` for one arc.
pub fn prefix_sums(profile: &SpeedProfile, division: &TimeDivision) -> Vec<f64> {
    let mut out = Vec::with_capacity(division.intervals());
    let mut acc = 0.0;
    for k in 0..division.intervals() {
        acc += interval_length(profile, division, k);
        out.push(acc);
    }
    out
}

/// Smallest integer `Q >= 1` with `min_i l_i >= d / Q`.
pub fn compute_q(length: f64, prefix: &[f64]) -> usize {
    let min_len = min_effective_length(prefix);
    let mut q = (length / min_len).ceil().max(1.0) as usize;
    // ceil of a rounded quotient can land one short
    while (q as f64) * min_len < length {
        q += 1;
    }
    q
}

/// Smallest single-interval length recovered from a prefix-sum row.
pub fn min_effective_length(prefix: &[f64]) -> f64 {
    let mut min = prefix[0];
    for w in prefix.windows(2) {
        min = min.min(w[1] - w[0]);
    }
    min
}

/// Additive effective lengths of every arc of a graph, plus the per-arc window
/// bound used by the bounded search.
#[derive(Debug, Clone, PartialEq)]
pub struct AelTable {
    intervals: usize,
    kind: ProfileKind,
    prefix: Vec<f64>,
    window: Vec<usize>,
}

impl AelTable {
    /// O(mK) time and space.
    pub fn build(graph: &TdGraph) -> Self {
        let division = graph.division();
        let intervals = division.intervals();
        let mut prefix = Vec::with_capacity(graph.arc_count() * intervals);
        let mut window = Vec::with_capacity(graph.arc_count());
        for arc in graph.arcs() {
            let start = prefix.len();
            let mut acc = 0.0;
            for k in 0..intervals {
                acc += interval_length(&arc.profile, division, k);
                prefix.push(acc);
            }
            window.push(compute_q(arc.length, &prefix[start..]));
        }
        Self {
            intervals,
            kind: graph.kind(),
            prefix,
            window,
        }
    }

    #[inline]
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    #[inline]
    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.window.len()
    }

    /// Prefix sums of arc `index`.
    #[inline]
    pub fn row(&self, index: usize) -> &[f64] {
        let start = index * self.intervals;
        &self.prefix[start..start + self.intervals]
    }

    /// Per-arc `Q` from [`compute_q`].
    #[inline]
    pub fn window_bound(&self, index: usize) -> usize {
        self.window[index]
    }

    pub fn max_window_bound(&self) -> Option<usize> {
        self.window.iter().copied().max()
    }

    /// Whether this table was built for `graph`'s shape.
    pub fn matches(&self, graph: &TdGraph) -> bool {
        self.intervals == graph.division().intervals()
            && self.kind == graph.kind()
            && self.window.len() == graph.arc_count()
    }
}

pub fn build_ael(graph: &TdGraph) -> AelTable {
    AelTable::build(graph)
}
