use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which resource a scaling point is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// Training compute, canonical unit GFLOPs.
    Compute,
    /// Model size, canonical unit millions of parameters.
    Params,
    /// Dataset size, canonical unit millions of image-noun pairs.
    Data,
}

impl Axis {
    /// Raw count per canonical unit.
    pub fn unit(self) -> f64 {
        match self {
            Axis::Compute => 1e9,
            Axis::Params | Axis::Data => 1e6,
        }
    }
}

/// A (cost, score) observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalePoint {
    pub label: String,
    pub x: f64,
    pub score: f64,
}

impl ScalePoint {
    /// Requires finite `x > 0` and `score ∈ [0, 1]`.
    pub fn new(label: impl Into<String>, x: f64, score: f64) -> Result<Self> {
        let label = label.into();
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::Domain(format!(
                "point `{label}`: x must be positive, got {x}"
            )));
        }
        if !(0.0..=1.0).contains(&score) {
            return Err(Error::Domain(format!(
                "point `{label}`: score must lie in [0, 1], got {score}"
            )));
        }
        Ok(Self { label, x, score })
    }

    /// Builds a point from a raw count (FLOPs, parameters, pairs).
    pub fn from_raw(label: impl Into<String>, axis: Axis, raw: f64, score: f64) -> Result<Self> {
        Self::new(label, raw / axis.unit(), score)
    }
}
