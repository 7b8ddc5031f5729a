//! Convergence analysis on logged training curves.
//!
//! Curves are first replaced by their running maximum, so a metric "reaches"
//! a level the first time it attains it and later dips are ignored. Crossings
//! are linearly interpolated between samples; there is no extrapolation
//! beyond either end.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scaling::ComputeBudget;

/// Ordered `(step, value)` samples of one metric for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingCurve {
    pub label: String,
    pub metric_name: String,
    points: Vec<(u64, f64)>,
}

impl TrainingCurve {
    /// Requires at least one point, strictly increasing steps and finite values.
    pub fn new(
        label: impl Into<String>,
        metric_name: impl Into<String>,
        points: Vec<(u64, f64)>,
    ) -> Result<Self> {
        let label = label.into();
        let invalid = |reason: String| Error::InvalidCurve {
            label: label.clone(),
            reason,
        };
        if points.is_empty() {
            return Err(invalid("no points".into()));
        }
        for w in points.windows(2) {
            if w[1].0 == w[0].0 {
                return Err(invalid(format!("duplicate step {}", w[0].0)));
            }
            if w[1].0 < w[0].0 {
                return Err(invalid(format!("step {} follows step {}", w[1].0, w[0].0)));
            }
        }
        if let Some(&(s, v)) = points.iter().find(|(_, v)| !v.is_finite()) {
            return Err(invalid(format!("non-finite value {v} at step {s}")));
        }
        Ok(Self {
            label,
            metric_name: metric_name.into(),
            points,
        })
    }

    pub fn points(&self) -> &[(u64, f64)] {
        &self.points
    }

    /// Cumulative best value at each sample.
    pub fn running_max(&self) -> Vec<(u64, f64)> {
        let mut best = f64::NEG_INFINITY;
        self.points
            .iter()
            .map(|&(s, v)| {
                best = best.max(v);
                (s, best)
            })
            .collect()
    }
}

/// First (interpolated) step at which the running maximum reaches
/// `threshold`, or `None` if it never does.
pub fn steps_to_threshold(curve: &TrainingCurve, threshold: f64) -> Option<f64> {
    let best = curve.running_max();
    let i = best.iter().position(|&(_, v)| v >= threshold)?;
    let (s1, v1) = best[i];
    if i == 0 {
        return Some(s1 as f64);
    }
    let (s0, v0) = best[i - 1];
    // v0 < threshold <= v1, so v1 > v0
    let t = (threshold - v0) / (v1 - v0);
    Some(s0 as f64 + t * (s1 - s0) as f64)
}

/// `steps_to_threshold(a) / steps_to_threshold(b)`: how many times faster
/// `b` reaches the threshold. `None` if either never reaches it or `b`
/// reaches it at step 0.
pub fn speedup(a: &TrainingCurve, b: &TrainingCurve, threshold: f64) -> Result<Option<f64>> {
    if a.metric_name != b.metric_name {
        return Err(Error::MetricMismatch(
            a.metric_name.clone(),
            b.metric_name.clone(),
        ));
    }
    let (Some(sa), Some(sb)) = (
        steps_to_threshold(a, threshold),
        steps_to_threshold(b, threshold),
    ) else {
        return Ok(None);
    };
    if sa == 0.0 || sb == 0.0 {
        return Ok(None);
    }
    Ok(Some(sa / sb))
}

/// Training FLOPs spent until the threshold is reached.
pub fn compute_to_threshold(
    curve: &TrainingCurve,
    threshold: f64,
    macs_per_step: u64,
    batch_size: u64,
) -> Result<Option<f64>> {
    if macs_per_step == 0 || batch_size == 0 {
        return Err(Error::Domain(
            "macs_per_step and batch_size must be positive".into(),
        ));
    }
    Ok(steps_to_threshold(curve, threshold)
        .map(|steps| ComputeBudget::flops_for_steps(macs_per_step, batch_size, steps)))
}
