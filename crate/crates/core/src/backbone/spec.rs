use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

/// Kind of attention block inserted at the attention levels of a UNet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AttentionBlock {
    /// Projection in, blocks of self-attention + cross-attention + gated
    /// feed-forward, projection out.
    #[default]
    SpatialTransformer,
    /// Single attention layer whose keys/values also see the projected text
    /// tokens. No feed-forward.
    Plain,
}

fn default_head_dim() -> u32 {
    64
}
fn default_latent_channels() -> u32 {
    4
}
fn default_time_embed_mult() -> u32 {
    4
}
fn default_context_dim() -> u32 {
    1024
}
fn default_context_tokens() -> u32 {
    77
}
fn default_ffn_mult() -> u32 {
    4
}

/// Declarative UNet denoiser description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UNetSpec {
    pub base_channels: u32,
    pub channel_mult: Vec<u32>,
    pub res_blocks_per_level: u32,
    /// Level indices that carry attention blocks. Must agree with the
    /// non-zero entries of `transformer_depth`.
    pub attention_levels: Vec<usize>,
    pub transformer_depth: Vec<u32>,
    #[serde(default = "default_context_dim")]
    pub context_dim: u32,
    #[serde(default = "default_context_tokens")]
    pub context_tokens: u32,
    #[serde(default = "default_head_dim")]
    pub head_dim: u32,
    #[serde(default = "default_latent_channels")]
    pub latent_channels: u32,
    #[serde(default = "default_time_embed_mult")]
    pub time_embed_mult: u32,
    #[serde(default)]
    pub attention_block: AttentionBlock,
    /// Down/upsample through residual blocks instead of a single conv.
    #[serde(default)]
    pub resblock_updown: bool,
    /// Time embedding projects to a (scale, shift) pair per channel.
    #[serde(default)]
    pub scale_shift_norm: bool,
}

impl UNetSpec {
    /// Convenience constructor with default text/latent settings.
    /// `attention_levels` is derived from the non-zero depths.
    pub fn new(
        base_channels: u32,
        channel_mult: Vec<u32>,
        res_blocks_per_level: u32,
        transformer_depth: Vec<u32>,
    ) -> Self {
        let attention_levels = levels_from_depth(&transformer_depth);
        Self {
            base_channels,
            channel_mult,
            res_blocks_per_level,
            attention_levels,
            transformer_depth,
            context_dim: default_context_dim(),
            context_tokens: default_context_tokens(),
            head_dim: default_head_dim(),
            latent_channels: default_latent_channels(),
            time_embed_mult: default_time_embed_mult(),
            attention_block: AttentionBlock::SpatialTransformer,
            resblock_updown: false,
            scale_shift_norm: false,
        }
    }

    pub fn levels(&self) -> usize {
        self.channel_mult.len()
    }

    pub fn channels_at(&self, level: usize) -> u64 {
        self.base_channels as u64 * self.channel_mult[level] as u64
    }

    pub fn time_embed_dim(&self) -> u64 {
        self.base_channels as u64 * self.time_embed_mult as u64
    }

    /// Depth of the middle-block attention stack.
    pub fn middle_depth(&self) -> u32 {
        self.transformer_depth.iter().copied().max().unwrap_or(0)
    }

    /// Attention heads per level (0 where the level has no attention).
    pub fn heads(&self) -> Vec<u64> {
        (0..self.levels())
            .map(|i| {
                if self.transformer_depth.get(i).copied().unwrap_or(0) > 0 {
                    self.channels_at(i) / self.head_dim.max(1) as u64
                } else {
                    0
                }
            })
            .collect()
    }

    /// The latent side must halve cleanly at every downsampling step.
    pub fn resolution_granularity(&self) -> u32 {
        let downs = self.levels().saturating_sub(1) as u32;
        8u32.saturating_mul(1u32 << downs.min(24))
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (name, value) in [
            ("base_channels", self.base_channels),
            ("res_blocks_per_level", self.res_blocks_per_level),
            ("context_dim", self.context_dim),
            ("context_tokens", self.context_tokens),
            ("head_dim", self.head_dim),
            ("latent_channels", self.latent_channels),
            ("time_embed_mult", self.time_embed_mult),
        ] {
            if value == 0 {
                out.push(Violation::new(&[name], "must be positive"));
            }
        }
        if self.channel_mult.is_empty() {
            out.push(Violation::new(
                &["channel_mult"],
                "must list at least one level",
            ));
        }
        for (i, &m) in self.channel_mult.iter().enumerate() {
            if m == 0 {
                out.push(Violation::new(
                    &["channel_mult"],
                    format!("multiplier at level {i} must be positive"),
                ));
            }
        }
        if self.transformer_depth.len() != self.channel_mult.len() {
            out.push(Violation::new(
                &["transformer_depth", "channel_mult"],
                format!(
                    "length mismatch: transformer_depth has {} entries, channel_mult has {}",
                    self.transformer_depth.len(),
                    self.channel_mult.len()
                ),
            ));
        }
        let mut seen = vec![false; self.channel_mult.len()];
        for &lvl in &self.attention_levels {
            if lvl >= self.channel_mult.len() {
                out.push(Violation::new(
                    &["attention_levels", "channel_mult"],
                    format!("attention level {lvl} is out of range"),
                ));
            } else if seen[lvl] {
                out.push(Violation::new(
                    &["attention_levels"],
                    format!("attention level {lvl} listed twice"),
                ));
            } else {
                seen[lvl] = true;
            }
        }
        for (i, &depth) in self.transformer_depth.iter().enumerate() {
            let listed = seen.get(i).copied().unwrap_or(false);
            if depth > 0 && !listed {
                out.push(Violation::new(
                    &["transformer_depth", "attention_levels"],
                    format!(
                        "level {i} has transformer depth {depth} but is not an attention level"
                    ),
                ));
            } else if depth == 0 && listed {
                out.push(Violation::new(
                    &["transformer_depth", "attention_levels"],
                    format!("level {i} is an attention level but has transformer depth 0"),
                ));
            }
        }
        if self.head_dim > 0 && self.base_channels > 0 {
            for i in 0..self.channel_mult.len() {
                let ch = self.channels_at(i);
                if !ch.is_multiple_of(self.head_dim as u64) {
                    out.push(Violation::new(
                        &["base_channels", "channel_mult", "head_dim"],
                        format!(
                            "{ch} channels at level {i} not divisible by head_dim {}",
                            self.head_dim
                        ),
                    ));
                }
            }
        }
        out
    }
}

pub(crate) fn levels_from_depth(depth: &[u32]) -> Vec<usize> {
    depth
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(i, _)| i)
        .collect()
}

/// Declarative diffusion-transformer (PixArt-style) description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiTSpec {
    pub patch_size: u32,
    pub hidden_dim: u32,
    pub depth: u32,
    pub num_heads: u32,
    #[serde(default = "default_context_dim")]
    pub token_dim: u32,
    #[serde(default = "default_context_tokens")]
    pub max_tokens: u32,
    pub caption_embedding: bool,
    #[serde(default = "default_latent_channels")]
    pub latent_channels: u32,
    #[serde(default = "default_ffn_mult")]
    pub ffn_mult: u32,
}

impl DiTSpec {
    pub fn resolution_granularity(&self) -> u32 {
        8u32.saturating_mul(self.patch_size.max(1))
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (name, value) in [
            ("patch_size", self.patch_size),
            ("hidden_dim", self.hidden_dim),
            ("depth", self.depth),
            ("num_heads", self.num_heads),
            ("token_dim", self.token_dim),
            ("max_tokens", self.max_tokens),
            ("latent_channels", self.latent_channels),
            ("ffn_mult", self.ffn_mult),
        ] {
            if value == 0 {
                out.push(Violation::new(&[name], "must be positive"));
            }
        }
        if self.num_heads > 0 && !self.hidden_dim.is_multiple_of(self.num_heads) {
            out.push(Violation::new(
                &["hidden_dim", "num_heads"],
                format!(
                    "hidden_dim {} not divisible by num_heads {}",
                    self.hidden_dim, self.num_heads
                ),
            ));
        }
        if !self.caption_embedding && self.token_dim != self.hidden_dim {
            out.push(Violation::new(
                &["caption_embedding", "token_dim", "hidden_dim"],
                format!(
                    "caption embedding can only be skipped when token_dim ({}) equals hidden_dim ({})",
                    self.token_dim, self.hidden_dim
                ),
            ));
        }
        out
    }
}

/// Either backbone family. Serialized with a `kind` tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArchSpec {
    #[serde(alias = "UNet")]
    Unet(UNetSpec),
    #[serde(alias = "dit", alias = "DiT")]
    Transformer(DiTSpec),
}

impl ArchSpec {
    pub fn violations(&self) -> Vec<Violation> {
        match self {
            ArchSpec::Unet(s) => s.violations(),
            ArchSpec::Transformer(s) => s.violations(),
        }
    }

    pub fn resolution_granularity(&self) -> u32 {
        match self {
            ArchSpec::Unet(s) => s.resolution_granularity(),
            ArchSpec::Transformer(s) => s.resolution_granularity(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ArchSpec::Unet(_) => "unet",
            ArchSpec::Transformer(_) => "transformer",
        }
    }
}

impl From<UNetSpec> for ArchSpec {
    fn from(s: UNetSpec) -> Self {
        ArchSpec::Unet(s)
    }
}

impl From<DiTSpec> for ArchSpec {
    fn from(s: DiTSpec) -> Self {
        ArchSpec::Transformer(s)
    }
}

/// Checks every invariant and reports all violations at once.
pub fn validate(spec: &ArchSpec) -> Result<()> {
    let v = spec.violations();
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(v))
    }
}

pub(crate) fn check_resolution(spec: &ArchSpec, resolution: u32) -> Result<()> {
    let granularity = spec.resolution_granularity();
    if resolution == 0 || !resolution.is_multiple_of(granularity) {
        return Err(Error::Granularity {
            resolution,
            granularity,
        });
    }
    Ok(())
}
