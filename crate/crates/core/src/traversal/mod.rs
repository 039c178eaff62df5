//! Arc traversal time `c(τ)` for a departure instant `τ`.
//!
//! Two families of procedures compute the same quantity:
//!
//! * sequential scans ([`att`], [`att_linear`]) walk interval by interval and
//!   cost O(K) per call;
//! * searched procedures ([`fatt`], [`bounded_fatt`], [`l_fatt`]) locate the
//!   arrival interval by bisection over the arc's additive effective lengths
//!   and cost O(log K) (O(log Q) for the bounded window).
//!
//! Every result carries the arrival interval, which callers feed back as the
//! `hint` of the next traversal that departs from the arrival node.

mod ael;
mod interp;

pub use ael::{
    build_ael, compute_q, effective_length, linear_coeffs, min_effective_length, prefix_sums,
    AelTable, LinearCoeffs,
};
pub use interp::interp_piecewise_linear;

use crate::model::{
    check_instant, locate_interval, map_time, Arc, HorizonPolicy, MappedTime, ModelError,
    ProfileKind, SpeedProfile, TimeDivision,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraversalError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{procedure} requires a {expected} profile")]
    KindMismatch {
        procedure: &'static str,
        expected: ProfileKind,
    },
    #[error("prefix table has {found} entries, division has {expected} intervals")]
    PrefixMismatch { expected: usize, found: usize },
    #[error("window bound must be at least 1")]
    ZeroWindow,
    #[error("window bound {q} violated: interval {interval} has effective length {length} < d/Q")]
    WindowViolation {
        q: usize,
        interval: usize,
        length: f64,
    },
    #[error("time {0} is outside the sampled range")]
    OutsideSamples(f64),
    #[error("samples must be non-empty and strictly increasing in time")]
    BadSamples,
}

/// Outcome of one traversal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraversalResult {
    /// Seconds.
    pub cost: f64,
    /// Interval containing the arrival instant (after the horizon policy).
    pub arrival_interval: usize,
    /// Interval steps for sequential procedures, AEL probes for searched ones.
    pub work: u64,
}

/// How distance accumulates inside a single interval.
trait Kinematics {
    /// Distance covered from `t` to the end of interval `k`.
    fn reach(&self, div: &TimeDivision, k: usize, t: f64) -> f64;
    /// Time to cover `dist` departing at `t` inside interval `k`.
    fn time_for(&self, div: &TimeDivision, k: usize, t: f64, dist: f64) -> f64;
    fn interval_length(&self, div: &TimeDivision, k: usize) -> f64;
    fn tail_speed(&self) -> f64;
}

struct Constant<'a>(&'a [f64]);

impl Kinematics for Constant<'_> {
    #[inline]
    fn reach(&self, div: &TimeDivision, k: usize, t: f64) -> f64 {
        self.0[k] * (div.end(k) - t)
    }

    #[inline]
    fn time_for(&self, _div: &TimeDivision, k: usize, _t: f64, dist: f64) -> f64 {
        dist / self.0[k]
    }

    #[inline]
    fn interval_length(&self, div: &TimeDivision, k: usize) -> f64 {
        self.0[k] * div.width(k)
    }

    #[inline]
    fn tail_speed(&self) -> f64 {
        self.0[self.0.len() - 1]
    }
}

struct Linear<'a>(&'a [f64]);

impl Linear<'_> {
    #[inline]
    fn slope(&self, div: &TimeDivision, k: usize) -> f64 {
        (self.0[k + 1] - self.0[k]) / div.width(k)
    }

    #[inline]
    fn speed(&self, div: &TimeDivision, k: usize, t: f64) -> f64 {
        self.0[k] + self.slope(div, k) * (t - div.start(k))
    }
}

impl Kinematics for Linear<'_> {
    #[inline]
    fn reach(&self, div: &TimeDivision, k: usize, t: f64) -> f64 {
        (div.end(k) - t) * (self.speed(div, k, t) + self.0[k + 1]) / 2.0
    }

    #[inline]
    fn time_for(&self, div: &TimeDivision, k: usize, t: f64, dist: f64) -> f64 {
        quadratic_time(self.slope(div, k), self.speed(div, k, t), dist)
    }

    #[inline]
    fn interval_length(&self, div: &TimeDivision, k: usize) -> f64 {
        div.width(k) * (self.0[k] + self.0[k + 1]) / 2.0
    }

    #[inline]
    fn tail_speed(&self) -> f64 {
        self.0[self.0.len() - 1]
    }
}

/// Positive root `c` of `slope c² + 2 speed c − 2 dist = 0`, i.e. the time to
/// cover `dist` starting at `speed` under constant acceleration `slope`.
///
/// Uses the rationalized form `2 dist / (speed + sqrt(speed² + 2 slope dist))`,
/// which equals `(−speed + sqrt(…)) / slope` and degrades to `dist / speed` as
/// the slope vanishes.
#[inline]
pub fn quadratic_time(slope: f64, speed: f64, dist: f64) -> f64 {
    debug_assert!(speed > 0.0, "speed must stay positive, got {speed}");
    let disc = speed * speed + 2.0 * slope * dist;
    debug_assert!(
        disc >= -1e-9 * speed * speed,
        "no real root: speed {speed}, slope {slope}, dist {dist}"
    );
    2.0 * dist / (speed + disc.max(0.0).sqrt())
}

fn constant_speeds<'a>(arc: &'a Arc, procedure: &'static str) -> Result<&'a [f64], TraversalError> {
    match &arc.profile {
        SpeedProfile::Constant(v) => Ok(v),
        SpeedProfile::Linear(_) => Err(TraversalError::KindMismatch {
            procedure,
            expected: ProfileKind::Constant,
        }),
    }
}

fn linear_speeds<'a>(arc: &'a Arc, procedure: &'static str) -> Result<&'a [f64], TraversalError> {
    match &arc.profile {
        SpeedProfile::Linear(v) => Ok(v),
        SpeedProfile::Constant(_) => Err(TraversalError::KindMismatch {
            procedure,
            expected: ProfileKind::Linear,
        }),
    }
}

fn check_prefix(prefix: &[f64], division: &TimeDivision) -> Result<(), TraversalError> {
    if prefix.len() != division.intervals() {
        return Err(TraversalError::PrefixMismatch {
            expected: division.intervals(),
            found: prefix.len(),
        });
    }
    Ok(())
}

/// Sequential traversal of a constant-speed arc. O(K) per call.
pub fn att(
    arc: &Arc,
    division: &TimeDivision,
    policy: HorizonPolicy,
    departure: f64,
    hint: Option<usize>,
) -> Result<TraversalResult, TraversalError> {
    let speeds = constant_speeds(arc, "att")?;
    sequential(
        &Constant(speeds),
        arc.length,
        division,
        policy,
        departure,
        hint,
    )
}

/// Sequential traversal of a linear-speed arc. O(K) per call; the reference
/// for [`l_fatt`].
pub fn att_linear(
    arc: &Arc,
    division: &TimeDivision,
    policy: HorizonPolicy,
    departure: f64,
    hint: Option<usize>,
) -> Result<TraversalResult, TraversalError> {
    let speeds = linear_speeds(arc, "att_linear")?;
    sequential(
        &Linear(speeds),
        arc.length,
        division,
        policy,
        departure,
        hint,
    )
}

/// Binary-search traversal of a constant-speed arc over its prefix sums.
pub fn fatt(
    arc: &Arc,
    prefix: &[f64],
    division: &TimeDivision,
    policy: HorizonPolicy,
    departure: f64,
    hint: Option<usize>,
) -> Result<TraversalResult, TraversalError> {
    let speeds = constant_speeds(arc, "fatt")?;
    check_prefix(prefix, division)?;
    searched(
        &Constant(speeds),
        arc.length,
        prefix,
        None,
        division,
        policy,
        departure,
        hint,
    )
}

/// [`fatt`] with the search confined to `q + 1` intervals past the departure
/// interval. Requires `l_i >= d / q` for every interval, see [`compute_q`].
#[allow(clippy::too_many_arguments)]
pub fn bounded_fatt(
    arc: &Arc,
    prefix: &[f64],
    division: &TimeDivision,
    policy: HorizonPolicy,
    departure: f64,
    q: usize,
    hint: Option<usize>,
) -> Result<TraversalResult, TraversalError> {
    let speeds = constant_speeds(arc, "bounded_fatt")?;
    check_prefix(prefix, division)?;
    check_window(arc.length, prefix, q)?;
    searched(
        &Constant(speeds),
        arc.length,
        prefix,
        Some(q),
        division,
        policy,
        departure,
        hint,
    )
}

/// Binary-search traversal of a linear-speed arc; prefix sums must hold the
/// integrated (trapezoidal) effective lengths.
pub fn l_fatt(
    arc: &Arc,
    prefix: &[f64],
    division: &TimeDivision,
    policy: HorizonPolicy,
    departure: f64,
    hint: Option<usize>,
) -> Result<TraversalResult, TraversalError> {
    let speeds = linear_speeds(arc, "l_fatt")?;
    check_prefix(prefix, division)?;
    searched(
        &Linear(speeds),
        arc.length,
        prefix,
        None,
        division,
        policy,
        departure,
        hint,
    )
}

fn check_window(length: f64, prefix: &[f64], q: usize) -> Result<(), TraversalError> {
    if q == 0 {
        return Err(TraversalError::ZeroWindow);
    }
    if cfg!(debug_assertions) {
        let mut prev = 0.0;
        for (interval, &l) in prefix.iter().enumerate() {
            let len = l - prev;
            prev = l;
            if (q as f64) * len < length {
                return Err(TraversalError::WindowViolation {
                    q,
                    interval,
                    length: len,
                });
            }
        }
    }
    Ok(())
}

fn finish(
    division: &TimeDivision,
    policy: HorizonPolicy,
    mapped_departure: f64,
    cost: f64,
    arrival_hint: usize,
    work: u64,
) -> Result<TraversalResult, TraversalError> {
    let arrival_interval = locate_interval(
        division,
        policy,
        mapped_departure + cost,
        Some(arrival_hint),
    )?;
    Ok(TraversalResult {
        cost,
        arrival_interval,
        work,
    })
}

fn beyond_horizon(kin: &impl Kinematics, length: f64, division: &TimeDivision) -> TraversalResult {
    TraversalResult {
        cost: length / kin.tail_speed(),
        arrival_interval: division.intervals() - 1,
        work: 0,
    }
}

fn sequential(
    kin: &impl Kinematics,
    length: f64,
    division: &TimeDivision,
    policy: HorizonPolicy,
    departure: f64,
    hint: Option<usize>,
) -> Result<TraversalResult, TraversalError> {
    check_instant(departure)?;
    let t = match map_time(division, policy, departure) {
        MappedTime::Within(t) => t,
        MappedTime::Beyond => return Ok(beyond_horizon(kin, length, division)),
    };
    let intervals = division.intervals();
    let k = division.locate_with_hint(t, hint);
    let reach = kin.reach(division, k, t);
    if reach >= length {
        let cost = kin.time_for(division, k, t, length);
        return finish(division, policy, t, cost, k, 0);
    }

    let mut remaining = length - reach;
    let mut cur = k + 1;
    let mut periods = 0u64;
    let mut steps = 0u64;
    loop {
        if cur == intervals {
            match policy {
                HorizonPolicy::StaticAfterHorizon => {
                    let cost = (division.horizon() - t) + remaining / kin.tail_speed();
                    return finish(division, policy, t, cost, intervals - 1, steps);
                }
                HorizonPolicy::Periodic => {
                    periods += 1;
                    cur = 0;
                }
            }
        }
        steps += 1;
        let len = kin.interval_length(division, cur);
        if len < remaining {
            remaining -= len;
            cur += 1;
        } else {
            let start = division.start(cur);
            let cost = periods as f64 * division.horizon()
                + (start - t)
                + kin.time_for(division, cur, start, remaining);
            return finish(division, policy, t, cost, cur, steps);
        }
    }
}

/// Smallest `j` in `[lo, hi]` with `target <= value(j) - base`, assuming the
/// predicate holds at `hi`. Each predicate evaluation counts as a probe.
#[inline]
fn lower_bound(
    value: impl Fn(usize) -> f64,
    base: f64,
    target: f64,
    mut lo: usize,
    mut hi: usize,
    probes: &mut u64,
) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        *probes += 1;
        if target <= value(mid) - base {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

#[allow(clippy::too_many_arguments)]
fn searched(
    kin: &impl Kinematics,
    length: f64,
    prefix: &[f64],
    window: Option<usize>,
    division: &TimeDivision,
    policy: HorizonPolicy,
    departure: f64,
    hint: Option<usize>,
) -> Result<TraversalResult, TraversalError> {
    check_instant(departure)?;
    let t = match map_time(division, policy, departure) {
        MappedTime::Within(t) => t,
        MappedTime::Beyond => return Ok(beyond_horizon(kin, length, division)),
    };
    let k = division.locate_with_hint(t, hint);
    let reach = kin.reach(division, k, t);
    if reach >= length {
        let cost = kin.time_for(division, k, t, length);
        return finish(division, policy, t, cost, k, 0);
    }
    // distance still to go once interval k is over, i.e. departing at τ_{k+1}
    let a = length - reach;
    match window {
        Some(q) => windowed(kin, prefix, q, division, policy, t, k, a),
        None => unbounded(kin, prefix, division, policy, t, k, a),
    }
}

#[allow(clippy::too_many_arguments)]
fn unbounded(
    kin: &impl Kinematics,
    prefix: &[f64],
    division: &TimeDivision,
    policy: HorizonPolicy,
    t: f64,
    k: usize,
    a: f64,
) -> Result<TraversalResult, TraversalError> {
    let last = division.intervals() - 1;
    let base = prefix[k];
    let at = |j: usize| prefix[j];

    let mut probes = 1u64;
    let to_horizon = prefix[last] - base;
    if a > to_horizon {
        return past_horizon(kin, prefix, division, policy, t, a - to_horizon, probes);
    }
    // k + 1 first, so that long intervals settle in two probes
    let found = if k + 1 == last {
        last
    } else {
        probes += 1;
        if a <= prefix[k + 1] - base {
            k + 1
        } else {
            lower_bound(at, base, a, k + 2, last, &mut probes)
        }
    };
    let covered = prefix[found - 1] - base;
    let start = division.start(found);
    let cost = (start - t) + kin.time_for(division, found, start, a - covered);
    finish(division, policy, t, cost, found, probes)
}

/// Search over the `q + 1` intervals after `k`. Indices past the last
/// interval continue into the following periods (periodic) or stand for the
/// frozen tail (static), so no separate horizon check is needed.
#[allow(clippy::too_many_arguments)]
fn windowed(
    kin: &impl Kinematics,
    prefix: &[f64],
    q: usize,
    division: &TimeDivision,
    policy: HorizonPolicy,
    t: f64,
    k: usize,
    a: f64,
) -> Result<TraversalResult, TraversalError> {
    let intervals = division.intervals();
    let last = intervals - 1;
    let per_period = prefix[last];
    let at = |j: usize| -> f64 {
        if j <= last {
            prefix[j]
        } else {
            match policy {
                HorizonPolicy::StaticAfterHorizon => f64::INFINITY,
                HorizonPolicy::Periodic => {
                    (j / intervals) as f64 * per_period + prefix[j % intervals]
                }
            }
        }
    };
    let base = prefix[k];
    let hi = k.saturating_add(1).saturating_add(q);

    let mut probes = 1u64;
    let found = if a <= at(k + 1) - base {
        k + 1
    } else {
        lower_bound(at, base, a, k + 2, hi, &mut probes)
    };
    if found > last && policy == HorizonPolicy::StaticAfterHorizon {
        let excess = a - (per_period - base);
        let cost = (division.horizon() - t) + excess / kin.tail_speed();
        return finish(division, policy, t, cost, last, probes);
    }
    let covered = at(found - 1) - base;
    let (periods, index) = (found / intervals, found % intervals);
    let start = division.start(index);
    let cost = periods as f64 * division.horizon()
        + (start - t)
        + kin.time_for(division, index, start, a - covered);
    finish(division, policy, t, cost, index, probes)
}

/// Remaining distance `excess` after the last interval of the horizon.
fn past_horizon(
    kin: &impl Kinematics,
    prefix: &[f64],
    division: &TimeDivision,
    policy: HorizonPolicy,
    t: f64,
    excess: f64,
    mut probes: u64,
) -> Result<TraversalResult, TraversalError> {
    let horizon = division.horizon();
    let last = division.intervals() - 1;
    match policy {
        HorizonPolicy::StaticAfterHorizon => {
            let cost = (horizon - t) + excess / kin.tail_speed();
            finish(division, policy, t, cost, last, probes)
        }
        HorizonPolicy::Periodic => {
            // skip whole periods so that the residual lands in (0, per_period]
            let per_period = prefix[last];
            let mut skipped = ((excess / per_period).ceil() - 1.0).max(0.0);
            let mut residual = excess - skipped * per_period;
            if residual > per_period {
                skipped += 1.0;
                residual -= per_period;
            } else if residual <= 0.0 && skipped >= 1.0 {
                skipped -= 1.0;
                residual += per_period;
            }
            // interval 0 first, mirroring the k + 1 check above
            let found = if last == 0 {
                0
            } else {
                probes += 1;
                if residual <= prefix[0] {
                    0
                } else {
                    lower_bound(|j| prefix[j], 0.0, residual, 1, last, &mut probes)
                }
            };
            let covered = if found == 0 { 0.0 } else { prefix[found - 1] };
            let start = division.start(found);
            let cost = (horizon - t)
                + skipped * horizon
                + start
                + kin.time_for(division, found, start, residual - covered);
            finish(division, policy, t, cost, found, probes)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const STATIC: HorizonPolicy = HorizonPolicy::StaticAfterHorizon;

    fn example_division() -> TimeDivision {
        TimeDivision::new(vec![0.0, 10.0, 15.0, 30.0, 40.0]).unwrap()
    }

    fn example_arc(length: f64) -> Arc {
        Arc::new(
            0,
            1,
            length,
            SpeedProfile::Constant(vec![10.0, 6.0, 8.0, 10.0]),
        )
    }

    #[test]
    fn att_worked_example() {
        let div = example_division();
        let arc = example_arc(170.0);
        let r = att(&arc, &div, STATIC, 6.0, None).unwrap();
        assert_eq!(r.cost, 21.5);
        assert_eq!(r.arrival_interval, 2);
        assert_eq!(att(&arc, &div, STATIC, 0.0, None).unwrap().cost, 20.0);
        assert_eq!(att(&arc, &div, STATIC, 10.0, None).unwrap().cost, 22.0);
        assert_eq!(
            att(&example_arc(30.0), &div, STATIC, 0.0, None).unwrap().cost,
            3.0
        );
    }

    #[test]
    fn fatt_worked_example() {
        let div = example_division();
        let arc = example_arc(170.0);
        let prefix = prefix_sums(&arc.profile, &div);
        let r = fatt(&arc, &prefix, &div, STATIC, 6.0, None).unwrap();
        assert_eq!((r.cost, r.arrival_interval), (21.5, 2));
        let r = fatt(&example_arc(30.0), &prefix, &div, STATIC, 0.0, None).unwrap();
        assert_eq!((r.cost, r.arrival_interval, r.work), (3.0, 0, 0));
        let q = compute_q(170.0, &prefix);
        let r = bounded_fatt(&arc, &prefix, &div, STATIC, 6.0, q, None).unwrap();
        assert_eq!(r.cost, 21.5);
    }

    #[test]
    fn stale_hint_falls_back() {
        let div = example_division();
        let arc = example_arc(170.0);
        let prefix = prefix_sums(&arc.profile, &div);
        for hint in [None, Some(0), Some(3), Some(17)] {
            assert_eq!(
                fatt(&arc, &prefix, &div, STATIC, 6.0, hint).unwrap().cost,
                21.5
            );
            assert_eq!(att(&arc, &div, STATIC, 6.0, hint).unwrap().cost, 21.5);
        }
    }

    #[test]
    fn errors() {
        let div = example_division();
        let arc = example_arc(170.0);
        let prefix = prefix_sums(&arc.profile, &div);
        assert!(matches!(
            att(&arc, &div, STATIC, -1.0, None),
            Err(TraversalError::Model(ModelError::NegativeTime(_)))
        ));
        assert!(matches!(
            att_linear(&arc, &div, STATIC, 1.0, None),
            Err(TraversalError::KindMismatch { .. })
        ));
        assert!(matches!(
            fatt(&arc, &prefix[..2], &div, STATIC, 1.0, None),
            Err(TraversalError::PrefixMismatch {
                expected: 4,
                found: 2
            })
        ));
        assert_eq!(
            bounded_fatt(&arc, &prefix, &div, STATIC, 1.0, 0, None),
            Err(TraversalError::ZeroWindow)
        );
        assert!(matches!(
            bounded_fatt(&arc, &prefix, &div, STATIC, 1.0, 5, None),
            Err(TraversalError::WindowViolation {
                q: 5,
                interval: 1,
                ..
            })
        ));
    }

    #[test]
    fn static_tail_and_beyond() {
        let div = example_division();
        // 350 m fit in the horizon from 0; 50 m more at the last speed (10 m/s)
        let arc = example_arc(400.0);
        let prefix = prefix_sums(&arc.profile, &div);
        for r in [
            att(&arc, &div, STATIC, 0.0, None).unwrap(),
            fatt(&arc, &prefix, &div, STATIC, 0.0, None).unwrap(),
        ] {
            assert_eq!(r.cost, 45.0);
            assert_eq!(r.arrival_interval, 3);
        }
        let r = fatt(&arc, &prefix, &div, STATIC, 50.0, None).unwrap();
        assert_eq!((r.cost, r.arrival_interval), (40.0, 3));
    }

    #[test]
    fn periodic_wraps() {
        let div = example_division();
        let p = HorizonPolicy::Periodic;
        // 350 m per period; 170 + 2*350 from τ = 6 is the worked example two periods later
        let arc = example_arc(870.0);
        let prefix = prefix_sums(&arc.profile, &div);
        let want = 34.0 + 40.0 + 6.0 + 21.5;
        let a = att(&arc, &div, p, 6.0, None).unwrap();
        let f = fatt(&arc, &prefix, &div, p, 6.0, None).unwrap();
        assert!((a.cost - want).abs() < 1e-9, "{}", a.cost);
        assert!((f.cost - want).abs() < 1e-9, "{}", f.cost);
        assert_eq!(a.arrival_interval, 2);
        assert_eq!(f.arrival_interval, 2);
        // departing one period later changes nothing
        let later = fatt(&arc, &prefix, &div, p, 46.0, None).unwrap();
        assert!((later.cost - f.cost).abs() < 1e-9);
    }

    #[test]
    fn linear_analytic() {
        let div = TimeDivision::new(vec![0.0, 10.0]).unwrap();
        let ramp = Arc::new(0, 1, 150.0, SpeedProfile::Linear(vec![10.0, 20.0]));
        let prefix = prefix_sums(&ramp.profile, &div);
        assert_eq!(
            att_linear(&ramp, &div, STATIC, 0.0, None).unwrap().cost,
            10.0
        );
        assert_eq!(
            l_fatt(&ramp, &prefix, &div, STATIC, 0.0, None)
                .unwrap()
                .cost,
            10.0
        );
        let flat = Arc::new(0, 1, 50.0, SpeedProfile::Linear(vec![10.0, 10.0]));
        assert_eq!(
            att_linear(&flat, &div, STATIC, 0.0, None).unwrap().cost,
            5.0
        );
    }

    #[test]
    fn linear_against_numeric_integration() {
        // v rises 10 -> 20 over [0, 10), then stays at 20
        let div = TimeDivision::new(vec![0.0, 10.0, 20.0]).unwrap();
        let arc = Arc::new(0, 1, 150.0, SpeedProfile::Linear(vec![10.0, 20.0, 20.0]));
        let r = att_linear(&arc, &div, STATIC, 5.0, None).unwrap();
        assert!(r.cost > 0.0);

        let speed = |t: f64| if t < 10.0 { 10.0 + t } else { 20.0 };
        let (mut t, mut x, dt) = (5.0f64, 0.0f64, 1e-4);
        while x < 150.0 {
            // midpoint rule on dx = v dt
            let step = speed(t + dt / 2.0) * dt;
            if x + step >= 150.0 {
                t += (150.0 - x) / speed(t);
                break;
            }
            x += step;
            t += dt;
        }
        let numeric = t - 5.0;
        assert!((r.cost - numeric).abs() < 1e-3, "{} vs {}", r.cost, numeric);
        assert_eq!(r.arrival_interval, div.locate(5.0 + r.cost));
    }

    #[test]
    fn quadratic_time_handles_signs() {
        // accelerating, decelerating, flat
        assert!((quadratic_time(1.0, 10.0, 150.0) - 10.0).abs() < 1e-12);
        assert!((quadratic_time(-1.0, 20.0, 150.0) - 10.0).abs() < 1e-12);
        assert_eq!(quadratic_time(0.0, 4.0, 10.0), 2.5);
        assert!((quadratic_time(1e-14, 4.0, 10.0) - 2.5).abs() < 1e-12);
    }
}
