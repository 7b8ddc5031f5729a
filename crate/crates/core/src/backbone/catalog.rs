//! Reference architectures: the UNet design space around SD2, DeepFloyd
//! IF-XL and SDXL, and the PixArt-α transformer family, each with the
//! published cost figures at 256×256.

use serde::Serialize;

use super::spec::{ArchSpec, AttentionBlock, DiTSpec, UNetSpec};
use crate::error::{Error, Result};

/// Published cost figures at 256×256, for side-by-side comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PublishedCost {
    pub params_b: f64,
    pub gmacs: f64,
    pub attention_gmacs: Option<f64>,
    pub attention_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BuiltinSpec {
    pub name: &'static str,
    pub family: &'static str,
    /// Name of the family member that ratios are reported against.
    pub baseline: &'static str,
    pub spec: ArchSpec,
    pub published: PublishedCost,
}

fn unet_row(
    name: &'static str,
    family: &'static str,
    baseline: &'static str,
    spec: UNetSpec,
    (params_b, gmacs, attn, pct): (f64, f64, f64, f64),
) -> BuiltinSpec {
    BuiltinSpec {
        name,
        family,
        baseline,
        spec: spec.into(),
        published: PublishedCost {
            params_b,
            gmacs,
            attention_gmacs: Some(attn),
            attention_pct: Some(pct),
        },
    }
}

fn sd2(c: u32) -> UNetSpec {
    UNetSpec::new(c, vec![1, 2, 4, 4], 2, vec![1, 1, 1, 0])
}

fn if_xl(c: u32) -> UNetSpec {
    UNetSpec {
        attention_block: AttentionBlock::Plain,
        resblock_updown: true,
        scale_shift_norm: true,
        ..UNetSpec::new(c, vec![1, 2, 3, 4], 3, vec![1, 1, 1, 0])
    }
}

fn sdxl(c: u32, td: [u32; 3]) -> UNetSpec {
    UNetSpec::new(c, vec![1, 2, 4], 2, td.to_vec())
}

fn pixart(
    hidden_dim: u32,
    depth: u32,
    token_dim: u32,
    max_tokens: u32,
    caption_embedding: bool,
) -> DiTSpec {
    DiTSpec {
        patch_size: 2,
        hidden_dim,
        depth,
        num_heads: 16,
        token_dim,
        max_tokens,
        caption_embedding,
        latent_channels: 4,
        ffn_mult: 4,
    }
}

fn dit_row(name: &'static str, spec: DiTSpec, params_b: f64, gmacs: f64) -> BuiltinSpec {
    BuiltinSpec {
        name,
        family: "pixart",
        baseline: "pixart-h1152-d28",
        spec: spec.into(),
        published: PublishedCost {
            params_b,
            gmacs,
            attention_gmacs: None,
            attention_pct: None,
        },
    }
}

/// All reference architectures in a stable order.
pub fn builtin_specs() -> Vec<BuiltinSpec> {
    const SD2: &str = "sd2-c320";
    const IF: &str = "if-xl-c704";
    const XL: &str = "sdxl-c320-td0_2_10";
    vec![
        unet_row("sd2-c320", "sd2", SD2, sd2(320), (0.87, 86.0, 34.0, 39.0)),
        unet_row("sd2-c512", "sd2", SD2, sd2(512), (2.19, 219.0, 85.0, 39.0)),
        unet_row(
            "if-xl-c512",
            "if-xl",
            IF,
            if_xl(512),
            (2.04, 194.0, 23.0, 12.0),
        ),
        unet_row(
            "if-xl-c704",
            "if-xl",
            IF,
            if_xl(704),
            (3.83, 364.0, 42.0, 12.0),
        ),
        unet_row(
            "sdxl-c128",
            "sdxl",
            XL,
            sdxl(128, [0, 2, 10]),
            (0.42, 35.0, 23.0, 65.0),
        ),
        unet_row(
            "sdxl-c192",
            "sdxl",
            XL,
            sdxl(192, [0, 2, 10]),
            (0.90, 75.0, 48.0, 65.0),
        ),
        unet_row(
            XL,
            "sdxl",
            XL,
            sdxl(320, [0, 2, 10]),
            (2.39, 198.0, 127.0, 64.0),
        ),
        unet_row(
            "sdxl-c384",
            "sdxl",
            XL,
            sdxl(384, [0, 2, 10]),
            (3.40, 282.0, 179.0, 64.0),
        ),
        unet_row(
            "sdxl-td2",
            "sdxl",
            XL,
            sdxl(320, [0, 2, 2]),
            (0.85, 98.0, 43.0, 44.0),
        ),
        unet_row(
            "sdxl-td4",
            "sdxl",
            XL,
            sdxl(320, [0, 2, 4]),
            (1.24, 123.0, 64.0, 52.0),
        ),
        unet_row(
            "sdxl-td12",
            "sdxl",
            XL,
            sdxl(320, [0, 2, 12]),
            (2.78, 223.0, 147.0, 66.0),
        ),
        unet_row(
            "sdxl-td14",
            "sdxl",
            XL,
            sdxl(320, [0, 2, 14]),
            (3.16, 248.0, 168.0, 68.0),
        ),
        unet_row(
            "sdxl-td4_4",
            "sdxl",
            XL,
            sdxl(320, [0, 4, 4]),
            (1.32, 143.0, 84.0, 59.0),
        ),
        unet_row(
            "sdxl-td4_8",
            "sdxl",
            XL,
            sdxl(320, [0, 4, 8]),
            (2.09, 193.0, 123.0, 64.0),
        ),
        unet_row(
            "sdxl-td4_12",
            "sdxl",
            XL,
            sdxl(320, [0, 4, 12]),
            (2.86, 243.0, 167.0, 69.0),
        ),
        unet_row(
            "sdxl-c384-td4_12",
            "sdxl",
            XL,
            sdxl(384, [0, 4, 12]),
            (4.07, 346.0, 237.0, 69.0),
        ),
        // original configuration: T5-XXL text features, 120 tokens of width 4096
        dit_row(
            "pixart-alpha-xl2",
            pixart(1152, 28, 4096, 120, true),
            0.61,
            139.0,
        ),
        dit_row(
            "pixart-h1152-d28",
            pixart(1152, 28, 1024, 77, true),
            0.61,
            139.0,
        ),
        dit_row(
            "pixart-h1536-d28",
            pixart(1536, 28, 1024, 77, true),
            1.08,
            247.0,
        ),
        dit_row(
            "pixart-h1024-d28",
            pixart(1024, 28, 1024, 77, false),
            0.48,
            110.0,
        ),
        dit_row(
            "pixart-h1024-d56",
            pixart(1024, 56, 1024, 77, false),
            0.95,
            220.0,
        ),
    ]
}

/// Looks up a reference architecture by name.
pub fn builtin(name: &str) -> Result<BuiltinSpec> {
    builtin_specs()
        .into_iter()
        .find(|b| b.name == name)
        .ok_or_else(|| Error::UnknownSpec(name.to_string()))
}
