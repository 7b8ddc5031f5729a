//! Picks the caption paired with an image for one training sample.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::record::CaptionRecord;
use crate::error::{Error, Result};

/// Number of top-ranked synthetic captions the `Top5` policy draws from.
pub const TOP_K: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixVariant {
    AltOnly,
    Top1,
    Top5,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixPolicy {
    pub variant: MixVariant,
    pub alt_probability: f64,
}

impl MixPolicy {
    pub fn new(variant: MixVariant, alt_probability: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alt_probability) {
            return Err(Error::Domain(format!(
                "alt_probability must lie in [0, 1], got {alt_probability}"
            )));
        }
        Ok(Self {
            variant,
            alt_probability,
        })
    }

    /// Half alt-text, half synthetic.
    pub fn even(variant: MixVariant) -> Self {
        Self {
            variant,
            alt_probability: 0.5,
        }
    }
}

/// Which caption was drawn. Synthetic ranks are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaptionChoice {
    Alt,
    Synthetic(usize),
}

/// Draws one caption choice. Records without synthetic captions always
/// fall back to the alt-text.
pub fn choose_caption<R: Rng + ?Sized>(
    record: &CaptionRecord,
    policy: &MixPolicy,
    rng: &mut R,
) -> CaptionChoice {
    if policy.variant == MixVariant::AltOnly {
        return CaptionChoice::Alt;
    }
    if rng.gen::<f64>() < policy.alt_probability {
        return CaptionChoice::Alt;
    }
    let available = record.synthetic_captions.len();
    if available == 0 {
        return CaptionChoice::Alt;
    }
    match policy.variant {
        MixVariant::Top1 => CaptionChoice::Synthetic(1),
        _ => CaptionChoice::Synthetic(rng.gen_range(0..available.min(TOP_K)) + 1),
    }
}

pub fn sample_caption<'r, R: Rng + ?Sized>(
    record: &'r CaptionRecord,
    policy: &MixPolicy,
    rng: &mut R,
) -> &'r str {
    match choose_caption(record, policy, rng) {
        CaptionChoice::Alt => &record.alt_text,
        CaptionChoice::Synthetic(rank) => &record.synthetic_captions[rank - 1],
    }
}
