use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// FLOPs charged per multiply-accumulate.
pub const FLOPS_PER_MAC: u128 = 2;

/// Forward-pass equivalents charged per training step (forward + backward).
pub const PASSES_PER_STEP: u128 = 3;

/// Training compute: `3 × (2 × macs_per_step) × batch_size × steps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeBudget {
    pub macs_per_step: u64,
    pub batch_size: u64,
    pub steps: u64,
    pub total_flops: u128,
}

impl ComputeBudget {
    pub fn total_flops_f64(&self) -> f64 {
        self.total_flops as f64
    }

    /// FLOPs per sample-step.
    pub fn flops_per_sample(macs_per_step: u64) -> u128 {
        PASSES_PER_STEP * FLOPS_PER_MAC * macs_per_step as u128
    }

    /// Same accounting for a fractional step count.
    pub fn flops_for_steps(macs_per_step: u64, batch_size: u64, steps: f64) -> f64 {
        Self::flops_per_sample(macs_per_step) as f64 * batch_size as f64 * steps
    }
}

pub fn training_flops(macs_per_step: u64, batch_size: u64, steps: u64) -> Result<ComputeBudget> {
    for (name, v) in [
        ("macs_per_step", macs_per_step),
        ("batch_size", batch_size),
        ("steps", steps),
    ] {
        if v == 0 {
            return Err(Error::Domain(format!("{name} must be positive")));
        }
    }
    let total_flops = ComputeBudget::flops_per_sample(macs_per_step)
        .checked_mul(batch_size as u128)
        .and_then(|f| f.checked_mul(steps as u128))
        .ok_or(Error::Overflow("training FLOPs"))?;
    Ok(ComputeBudget {
        macs_per_step,
        batch_size,
        steps,
        total_flops,
    })
}
