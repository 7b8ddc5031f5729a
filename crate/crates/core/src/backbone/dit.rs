//! Layer inventory of a PixArt-style diffusion transformer.
//!
//! Same counting rules as the UNet: conv/dense MACs only. LayerNorms carry
//! no affine parameters; conditioning enters through a shared time MLP and a
//! per-block modulation table. All block MACs form the attention bucket.

use super::cost::Inventory;
use super::spec::DiTSpec;

/// Width of the sinusoidal timestep features fed to the time MLP.
pub const TIME_FREQ_DIM: u64 = 256;

/// Modulation vectors per block: shift/scale/gate for attention and MLP.
const BLOCK_MODULATION: u64 = 6;

/// Parameters of one transformer block.
pub fn block_params(spec: &DiTSpec) -> u64 {
    let mut inv = Inventory::default();
    block(&mut inv, spec, 0, 0, 0);
    inv.layers.iter().map(|l| l.params).sum()
}

fn block(inv: &mut Inventory, spec: &DiTSpec, idx: u32, tokens: u64, text_tokens: u64) {
    let h = spec.hidden_dim as u64;
    let ffn = spec.ffn_mult as u64 * h;
    // text features arrive at width h when embedded, token_dim (== h) otherwise
    let kv_in = if spec.caption_embedding {
        h
    } else {
        spec.token_dim as u64
    };
    let blk = format!("blocks.{idx}");
    inv.push(format!("{blk}.modulation"), BLOCK_MODULATION * h, 0);
    inv.linear(format!("{blk}.self_attn.qkv"), h, 3 * h, true, tokens);
    inv.linear(format!("{blk}.self_attn.out"), h, h, true, tokens);
    inv.linear(format!("{blk}.cross_attn.q"), h, h, true, tokens);
    inv.linear(
        format!("{blk}.cross_attn.kv"),
        kv_in,
        2 * h,
        true,
        text_tokens,
    );
    inv.linear(format!("{blk}.cross_attn.out"), h, h, true, tokens);
    inv.linear(format!("{blk}.mlp.fc1"), h, ffn, true, tokens);
    inv.linear(format!("{blk}.mlp.fc2"), ffn, h, true, tokens);
}

pub(crate) fn inventory(spec: &DiTSpec, latent_side: u64) -> Inventory {
    let h = spec.hidden_dim as u64;
    let p = spec.patch_size as u64;
    let lat = spec.latent_channels as u64;
    let grid = latent_side / p;
    let tokens = grid * grid;
    let text_tokens = spec.max_tokens as u64;
    let mut inv = Inventory::default();

    inv.conv("patch_embed", lat, h, p, tokens);
    // timestep path runs once per sample: parameters only
    inv.push("time_embed.0", TIME_FREQ_DIM * h + h, 0);
    inv.push("time_embed.1", h * h + h, 0);
    inv.push(
        "time_modulation",
        h * BLOCK_MODULATION * h + BLOCK_MODULATION * h,
        0,
    );
    if spec.caption_embedding {
        inv.linear(
            "caption_embed.0",
            spec.token_dim as u64,
            h,
            true,
            text_tokens,
        );
        inv.linear("caption_embed.1", h, h, true, text_tokens);
    }

    inv.attention = true;
    for i in 0..spec.depth {
        block(&mut inv, spec, i, tokens, text_tokens);
    }
    inv.attention = false;

    inv.push("final.modulation", 2 * h, 0);
    inv.linear("final.linear", h, p * p * lat, true, tokens);
    inv
}
