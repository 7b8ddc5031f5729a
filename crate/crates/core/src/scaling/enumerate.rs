use serde::Serialize;

use crate::backbone::{ArchSpec, UNetSpec};
use crate::error::Violation;

#[derive(Debug, Clone, Serialize)]
pub struct SkippedVariant {
    pub name: String,
    pub reasons: Vec<Violation>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Enumeration {
    pub variants: Vec<(String, UNetSpec)>,
    pub skipped: Vec<SkippedVariant>,
}

fn variant_name(channels: u32, depth: &[u32]) -> String {
    let td: Vec<String> = depth.iter().map(|d| d.to_string()).collect();
    format!("c{channels}-td{}", td.join("_"))
}

/// Applies every (channels, transformer depth) combination to `base`.
///
/// Attention levels follow the non-zero depths of each combination. Invalid
/// combinations are skipped and reported with their violations.
pub fn enumerate_variants(
    base: &UNetSpec,
    channel_choices: &[u32],
    td_choices: &[Vec<u32>],
) -> Enumeration {
    let mut out = Enumeration::default();
    for &channels in channel_choices {
        for depth in td_choices {
            let name = variant_name(channels, depth);
            let spec = UNetSpec {
                base_channels: channels,
                transformer_depth: depth.clone(),
                attention_levels: crate::backbone::spec_levels(depth),
                ..base.clone()
            };
            let reasons = ArchSpec::Unet(spec.clone()).violations();
            if reasons.is_empty() {
                out.variants.push((name, spec));
            } else {
                out.skipped.push(SkippedVariant { name, reasons });
            }
        }
    }
    out
}
