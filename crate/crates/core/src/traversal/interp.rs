use super::TraversalError;

/// Linear interpolation of sampled traversal times `(τ_k, f_k)` at `t`.
///
/// Interpolating sampled costs is not exact for interval speed profiles: the
/// true cost between two samples is generally not linear in the departure.
pub fn interp_piecewise_linear(samples: &[(f64, f64)], t: f64) -> Result<f64, TraversalError> {
    if samples.is_empty() || samples.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(TraversalError::BadSamples);
    }
    let (first, last) = (samples[0].0, samples[samples.len() - 1].0);
    if !(first..=last).contains(&t) {
        return Err(TraversalError::OutsideSamples(t));
    }
    let upper = samples.partition_point(|&(x, _)| x <= t);
    if upper == samples.len() {
        return Ok(samples[upper - 1].1);
    }
    let (x0, f0) = samples[upper - 1];
    let (x1, f1) = samples[upper];
    Ok((f1 - f0) / (x1 - x0) * (t - x0) + f0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_samples() {
        let s = [(0.0, 20.0), (10.0, 22.0)];
        assert_eq!(interp_piecewise_linear(&s, 6.0).unwrap(), 21.2);
        assert_eq!(interp_piecewise_linear(&s, 0.0).unwrap(), 20.0);
        assert_eq!(interp_piecewise_linear(&s, 10.0).unwrap(), 22.0);
        assert_eq!(
            interp_piecewise_linear(&s, 10.5),
            Err(TraversalError::OutsideSamples(10.5))
        );
        assert_eq!(
            interp_piecewise_linear(&[(1.0, 1.0), (1.0, 2.0)], 1.0),
            Err(TraversalError::BadSamples)
        );
    }
}
