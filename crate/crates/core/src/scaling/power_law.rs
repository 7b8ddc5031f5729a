//! `score = a · x^b`, fitted by ordinary least squares on (ln x, ln score).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::point::ScalePoint;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub a: f64,
    pub b: f64,
    /// Residual sum of squares in log space.
    pub rss: f64,
    pub n_points: usize,
}

impl PowerLawFit {
    /// A fit with known coefficients and no residuals.
    pub fn exact(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            rss: 0.0,
            n_points: 2,
        }
    }
}

/// Rejects points outside the log domain, naming the first offender.
pub(crate) fn check_log_domain(points: &[ScalePoint]) -> Result<()> {
    for p in points {
        if !(p.x.is_finite() && p.x > 0.0) {
            return Err(Error::Domain(format!(
                "point `{}`: x must be positive, got {}",
                p.label, p.x
            )));
        }
        if !(p.score.is_finite() && p.score > 0.0) {
            return Err(Error::Domain(format!(
                "point `{}`: score must be positive, got {}",
                p.label, p.score
            )));
        }
    }
    Ok(())
}

pub fn fit_power_law(points: &[ScalePoint]) -> Result<PowerLawFit> {
    if points.len() < 2 {
        return Err(Error::Domain(format!(
            "power-law fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    check_log_domain(points)?;
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.x.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.score.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in lx.iter().zip(&ly) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if points.iter().all(|p| p.x == points[0].x) || sxx == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let b = sxy / sxx;
    let intercept = my - b * mx;
    let rss = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let r = y - (intercept + b * x);
            r * r
        })
        .sum();
    Ok(PowerLawFit {
        a: intercept.exp(),
        b,
        rss,
        n_points: points.len(),
    })
}

/// `a · x^b`. Scores above 1 are extrapolations and are not clamped.
pub fn predict_score(fit: &PowerLawFit, x: f64) -> f64 {
    fit.a * x.powf(fit.b)
}

/// The x at which the fit reaches `target_score`.
pub fn invert_budget(fit: &PowerLawFit, target_score: f64) -> Result<f64> {
    if fit.b == 0.0 {
        return Err(Error::NotInvertible);
    }
    if !(target_score.is_finite() && target_score > 0.0) {
        return Err(Error::Domain(format!(
            "target score must be positive, got {target_score}"
        )));
    }
    if !(fit.a.is_finite() && fit.a > 0.0) {
        return Err(Error::Domain(format!(
            "fit coefficient must be positive, got {}",
            fit.a
        )));
    }
    Ok(((target_score.ln() - fit.a.ln()) / fit.b).exp())
}
