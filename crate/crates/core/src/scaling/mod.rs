//! Scaling analysis: design-space enumeration, Pareto frontiers, power-law
//! fits and training-compute budgets.

mod budget;
mod enumerate;
mod pareto;
mod point;
mod power_law;

pub use budget::{training_flops, ComputeBudget, FLOPS_PER_MAC, PASSES_PER_STEP};
pub use enumerate::{enumerate_variants, Enumeration, SkippedVariant};
pub use pareto::{pareto_frontier, pareto_split};
pub use point::{Axis, ScalePoint};
pub use power_law::{fit_power_law, invert_budget, predict_score, PowerLawFit};

use serde::Serialize;

use crate::error::Result;

/// Frontier, fit on the frontier, and predictions at requested x values.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    pub frontier: Vec<ScalePoint>,
    pub fit: PowerLawFit,
    pub predictions: Vec<(f64, f64)>,
}

/// Composes [`pareto_frontier`] and [`fit_power_law`]. Every input point,
/// dominated or not, must have a positive score.
pub fn frontier_fit(points: &[ScalePoint], predict_at: &[f64]) -> Result<ScalingReport> {
    power_law::check_log_domain(points)?;
    let frontier = pareto_frontier(points)?;
    let fit = fit_power_law(&frontier)?;
    let predictions = predict_at
        .iter()
        .map(|&x| (x, predict_score(&fit, x)))
        .collect();
    Ok(ScalingReport {
        frontier,
        fit,
        predictions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_score_is_named_even_when_dominated() {
        let pts = vec![
            ScalePoint::new("ok", 1.0, 0.5).unwrap(),
            ScalePoint::new("late", 3.0, 0.7).unwrap(),
            ScalePoint::new("broken", 2.0, 0.0).unwrap(),
        ];
        let err = frontier_fit(&pts, &[]).unwrap_err();
        assert!(err.to_string().contains("`broken`"), "{err}");
    }
}
