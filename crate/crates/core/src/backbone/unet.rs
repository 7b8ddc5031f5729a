//! Layer inventory of a latent-diffusion UNet.
//!
//! Counting rules:
//! - only conv/dense MACs over image positions or text tokens are counted;
//!   attention score and value products, normalizations, activations,
//!   resampling by interpolation and the per-sample timestep path are free;
//! - every conv/dense layer carries a bias except the attention q/k/v
//!   projections of spatial transformers;
//! - the attention bucket holds the attention stacks of the encoder and
//!   decoder levels. The middle-block stack counts toward the total only.

use super::cost::Inventory;
use super::spec::{AttentionBlock, UNetSpec};

/// Width of the feed-forward hidden layer relative to the model width.
const FF_INNER_MULT: u64 = 4;

struct Walker<'a> {
    spec: &'a UNetSpec,
    inv: Inventory,
    temb: u64,
    ctx: u64,
    tokens: u64,
}

impl<'a> Walker<'a> {
    fn res_block(&mut self, name: &str, cin: u64, cout: u64, area: u64) {
        let temb = self.temb;
        let time_out = if self.spec.scale_shift_norm {
            2 * cout
        } else {
            cout
        };
        let inv = &mut self.inv;
        inv.norm(format!("{name}.norm1"), cin);
        inv.conv(format!("{name}.conv1"), cin, cout, 3, area);
        inv.push(format!("{name}.time_proj"), temb * time_out + time_out, 0);
        inv.norm(format!("{name}.norm2"), cout);
        inv.conv(format!("{name}.conv2"), cout, cout, 3, area);
        if cin != cout {
            inv.conv(format!("{name}.skip"), cin, cout, 1, area);
        }
    }

    fn attention_stack(&mut self, name: &str, dim: u64, depth: u32, area: u64) {
        match self.spec.attention_block {
            AttentionBlock::SpatialTransformer => self.spatial_transformer(name, dim, depth, area),
            AttentionBlock::Plain => self.plain_attention(name, dim, depth, area),
        }
    }

    fn spatial_transformer(&mut self, name: &str, d: u64, depth: u32, l: u64) {
        let (ctx, tokens) = (self.ctx, self.tokens);
        let inv = &mut self.inv;
        inv.norm(format!("{name}.norm"), d);
        inv.linear(format!("{name}.proj_in"), d, d, true, l);
        for b in 0..depth {
            let blk = format!("{name}.block{b}");
            inv.norm(format!("{blk}.norm1"), d);
            inv.linear(format!("{blk}.self_attn.qkv"), d, 3 * d, false, l);
            inv.linear(format!("{blk}.self_attn.out"), d, d, true, l);
            inv.norm(format!("{blk}.norm2"), d);
            inv.linear(format!("{blk}.cross_attn.q"), d, d, false, l);
            inv.linear(format!("{blk}.cross_attn.kv"), ctx, 2 * d, false, tokens);
            inv.linear(format!("{blk}.cross_attn.out"), d, d, true, l);
            inv.norm(format!("{blk}.norm3"), d);
            // gated: one projection yields both the value and the gate
            inv.linear(format!("{blk}.ff.proj"), d, 2 * FF_INNER_MULT * d, true, l);
            inv.linear(format!("{blk}.ff.out"), FF_INNER_MULT * d, d, true, l);
        }
        inv.linear(format!("{name}.proj_out"), d, d, true, l);
    }

    fn plain_attention(&mut self, name: &str, d: u64, depth: u32, l: u64) {
        let (ctx, tokens) = (self.ctx, self.tokens);
        let inv = &mut self.inv;
        for b in 0..depth {
            let blk = format!("{name}.block{b}");
            inv.norm(format!("{blk}.norm"), d);
            inv.linear(format!("{blk}.qkv"), d, 3 * d, true, l);
            inv.linear(format!("{blk}.text_kv"), ctx, 2 * d, true, tokens);
            inv.linear(format!("{blk}.out"), d, d, true, l);
        }
    }

    /// Stride-2 conv going down, resize + conv going up. Both cost one
    /// 3×3 conv at the output area.
    fn resample(&mut self, name: &str, ch: u64, out_area: u64) {
        if self.spec.resblock_updown {
            self.res_block(name, ch, ch, out_area);
        } else {
            self.inv.conv(format!("{name}.conv"), ch, ch, 3, out_area);
        }
    }
}

/// Enumerates every layer for a latent of `latent_side × latent_side`.
/// The spec must be valid and `latent_side` divisible by `2^(levels-1)`.
pub(crate) fn inventory(spec: &UNetSpec, latent_side: u64) -> Inventory {
    let c = spec.base_channels as u64;
    let levels = spec.levels();
    let area = |lvl: usize| (latent_side >> lvl).pow(2);
    let mut w = Walker {
        spec,
        inv: Inventory::default(),
        temb: spec.time_embed_dim(),
        ctx: spec.context_dim as u64,
        tokens: spec.context_tokens as u64,
    };
    let temb = w.temb;
    let lat = spec.latent_channels as u64;
    let rb = spec.res_blocks_per_level;

    w.inv.push("time_embed.0", c * temb + temb, 0);
    w.inv.push("time_embed.1", temb * temb + temb, 0);
    w.inv.conv("input.conv", lat, c, 3, area(0));

    let mut skips = vec![c];
    let mut ch = c;
    for lvl in 0..levels {
        let out = spec.channels_at(lvl);
        let depth = spec.transformer_depth[lvl];
        for j in 0..rb {
            w.res_block(&format!("down.{lvl}.res{j}"), ch, out, area(lvl));
            ch = out;
            if depth > 0 {
                w.inv.attention = true;
                w.attention_stack(&format!("down.{lvl}.attn{j}"), ch, depth, area(lvl));
                w.inv.attention = false;
            }
            skips.push(ch);
        }
        if lvl + 1 < levels {
            w.resample(&format!("down.{lvl}.downsample"), ch, area(lvl + 1));
            skips.push(ch);
        }
    }

    let last = levels - 1;
    w.res_block("mid.res0", ch, ch, area(last));
    let mid_depth = spec.middle_depth();
    if mid_depth > 0 {
        w.attention_stack("mid.attn", ch, mid_depth, area(last));
    }
    w.res_block("mid.res1", ch, ch, area(last));

    for lvl in (0..levels).rev() {
        let out = spec.channels_at(lvl);
        let depth = spec.transformer_depth[lvl];
        for j in 0..=rb {
            let skip = skips.pop().expect("skip stack underflow");
            w.res_block(&format!("up.{lvl}.res{j}"), ch + skip, out, area(lvl));
            ch = out;
            if depth > 0 {
                w.inv.attention = true;
                w.attention_stack(&format!("up.{lvl}.attn{j}"), ch, depth, area(lvl));
                w.inv.attention = false;
            }
        }
        if lvl > 0 {
            w.resample(&format!("up.{lvl}.upsample"), ch, area(lvl - 1));
        }
    }
    debug_assert!(skips.is_empty());

    w.inv.norm("output.norm", ch);
    w.inv.conv("output.conv", ch, lat, 3, area(0));
    w.inv
}
