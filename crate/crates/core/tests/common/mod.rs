//! Hand-enumerated miniature UNet shared by the cost-model suites.
#![allow(dead_code)]

use diffscale::backbone::{ArchSpec, UNetSpec};

/// C=8, mult [1,2], one res block per level, TD [0,1], head_dim 4,
/// 8-wide text features, 2 text tokens.
pub fn mini() -> ArchSpec {
    UNetSpec {
        head_dim: 4,
        context_dim: 8,
        context_tokens: 2,
        ..UNetSpec::new(8, vec![1, 2], 1, vec![0, 1])
    }
    .into()
}

// Resolution 32 → 4×4 latent: level 0 has 16 positions, level 1 has 4.
// Time embedding width 32; the timestep path costs no MACs. Every entry is (block, params, macs), written
// out sub-layer by sub-layer.
const RES_0_8_8: (u64, u64) = (
    2 * 8 + (9 * 8 * 8 + 8) + (32 * 8 + 8) + 2 * 8 + (9 * 8 * 8 + 8),
    9 * 8 * 8 * 16 + 9 * 8 * 8 * 16,
);
const RES_1_8_16: (u64, u64) = (
    2 * 8 + (9 * 8 * 16 + 16) + (32 * 16 + 16) + 2 * 16 + (9 * 16 * 16 + 16) + (8 * 16 + 16),
    9 * 8 * 16 * 4 + 9 * 16 * 16 * 4 + 8 * 16 * 4,
);
const RES_MID: (u64, u64) = (
    2 * 16 + (9 * 16 * 16 + 16) + (32 * 16 + 16) + 2 * 16 + (9 * 16 * 16 + 16),
    9 * 16 * 16 * 4 + 9 * 16 * 16 * 4,
);
// transformer at D=16 over 4 positions with 2 text tokens of width 8
pub const TRANSFORMER: (u64, u64) = (
    2 * 16 + (16 * 16 + 16)                                  // norm, proj_in
        + 2 * 16 + 3 * 16 * 16 + (16 * 16 + 16)               // self-attention
        + 2 * 16 + 16 * 16 + 2 * 8 * 16 + (16 * 16 + 16)      // cross-attention
        + 2 * 16 + (16 * 128 + 128) + (64 * 16 + 16)          // gated feed-forward
        + (16 * 16 + 16), // proj_out
    16 * 16 * 4
        + 3 * 16 * 16 * 4
        + 16 * 16 * 4
        + 16 * 16 * 4
        + 2 * 8 * 16 * 2
        + 16 * 16 * 4
        + 16 * 128 * 4
        + 64 * 16 * 4
        + 16 * 16 * 4,
);

pub fn golden_blocks() -> Vec<(&'static str, u64, u64)> {
    vec![
        ("time_embed.0", 8 * 32 + 32, 0),
        ("time_embed.1", 32 * 32 + 32, 0),
        ("input.conv", 9 * 4 * 8 + 8, 9 * 4 * 8 * 16),
        ("down.0.res0", RES_0_8_8.0, RES_0_8_8.1),
        ("down.0.downsample", 9 * 8 * 8 + 8, 9 * 8 * 8 * 4),
        ("down.1.res0", RES_1_8_16.0, RES_1_8_16.1),
        ("down.1.attn0", TRANSFORMER.0, TRANSFORMER.1),
        ("mid.res0", RES_MID.0, RES_MID.1),
        ("mid.attn", TRANSFORMER.0, TRANSFORMER.1),
        ("mid.res1", RES_MID.0, RES_MID.1),
        // skip 16 → input 32
        (
            "up.1.res0",
            2 * 32
                + (9 * 32 * 16 + 16)
                + (32 * 16 + 16)
                + 2 * 16
                + (9 * 16 * 16 + 16)
                + (32 * 16 + 16),
            9 * 32 * 16 * 4 + 9 * 16 * 16 * 4 + 32 * 16 * 4,
        ),
        ("up.1.attn0", TRANSFORMER.0, TRANSFORMER.1),
        // skip 8 → input 24
        (
            "up.1.res1",
            2 * 24
                + (9 * 24 * 16 + 16)
                + (32 * 16 + 16)
                + 2 * 16
                + (9 * 16 * 16 + 16)
                + (24 * 16 + 16),
            9 * 24 * 16 * 4 + 9 * 16 * 16 * 4 + 24 * 16 * 4,
        ),
        ("up.1.attn1", TRANSFORMER.0, TRANSFORMER.1),
        ("up.1.upsample", 9 * 16 * 16 + 16, 9 * 16 * 16 * 16),
        // skip 8 → input 24, output 8
        (
            "up.0.res0",
            2 * 24 + (9 * 24 * 8 + 8) + (32 * 8 + 8) + 2 * 8 + (9 * 8 * 8 + 8) + (24 * 8 + 8),
            9 * 24 * 8 * 16 + 9 * 8 * 8 * 16 + 24 * 8 * 16,
        ),
        // skip 8 → input 16
        (
            "up.0.res1",
            2 * 16 + (9 * 16 * 8 + 8) + (32 * 8 + 8) + 2 * 8 + (9 * 8 * 8 + 8) + (16 * 8 + 8),
            9 * 16 * 8 * 16 + 9 * 8 * 8 * 16 + 16 * 8 * 16,
        ),
        ("output", 2 * 8 + 9 * 8 * 4 + 4, 9 * 8 * 4 * 16),
    ]
}

pub const GOLDEN_PARAMS: u64 = 63_772;
pub const GOLDEN_MACS: u64 = 325_888;
pub const GOLDEN_ATTENTION_MACS: u64 = 62_976;
