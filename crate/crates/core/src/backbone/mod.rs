//! Analytic parameter and MAC counting for diffusion denoising backbones.

mod catalog;
mod cost;
mod dit;
mod spec;
mod unet;

pub use catalog::{builtin, builtin_specs, BuiltinSpec, PublishedCost};
pub use cost::{CostReport, Layer};
pub use dit::TIME_FREQ_DIM;
pub(crate) use spec::levels_from_depth as spec_levels;
pub use spec::{validate, ArchSpec, AttentionBlock, DiTSpec, UNetSpec};

use crate::error::Result;

/// Pixels per latent cell of the autoencoder.
pub const VAE_DOWNSCALE: u32 = 8;

/// Every countable layer at the given image resolution.
pub fn layers(spec: &ArchSpec, resolution: u32) -> Result<Vec<Layer>> {
    validate(spec)?;
    spec::check_resolution(spec, resolution)?;
    let side = (resolution / VAE_DOWNSCALE) as u64;
    Ok(match spec {
        ArchSpec::Unet(s) => unet::inventory(s, side).layers,
        ArchSpec::Transformer(s) => dit::inventory(s, side).layers,
    })
}

/// Number of learnable scalars. Independent of resolution.
pub fn count_params(spec: &ArchSpec) -> Result<u64> {
    let layers = layers(spec, spec.resolution_granularity())?;
    Ok(layers.iter().map(|l| l.params).sum())
}

/// Parameter count and MAC breakdown for one forward pass at batch 1.
pub fn count_macs(spec: &ArchSpec, resolution: u32) -> Result<CostReport> {
    let layers = layers(spec, resolution)?;
    Ok(CostReport::from_layers(&layers, resolution))
}

/// Parameters of a single transformer block.
pub fn dit_block_params(spec: &DiTSpec) -> u64 {
    dit::block_params(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unet(c: u32, mult: &[u32], rb: u32, td: &[u32]) -> ArchSpec {
        UNetSpec::new(c, mult.to_vec(), rb, td.to_vec()).into()
    }

    #[test]
    fn params_do_not_depend_on_resolution() {
        let s = unet(320, &[1, 2, 4], 2, &[0, 2, 10]);
        let p = count_params(&s).unwrap();
        for res in [128, 256, 512, 1024] {
            assert_eq!(count_macs(&s, res).unwrap().params, p);
        }
    }

    #[test]
    fn sdxl_matches_reference_row() {
        let s = unet(320, &[1, 2, 4], 2, &[0, 2, 10]);
        let r = count_macs(&s, 256).unwrap();
        assert!((r.params_billions() / 2.39 - 1.0).abs() < 0.03);
        assert!((r.gmacs() / 198.0 - 1.0).abs() < 0.05);
        assert!((r.attention_gmacs() / 127.0 - 1.0).abs() < 0.05);
        assert!((r.attention_share - 0.64).abs() < 0.05);
    }

    #[test]
    fn sd2_params() {
        let s = unet(320, &[1, 2, 4, 4], 2, &[1, 1, 1, 0]);
        let p = count_params(&s).unwrap() as f64;
        assert!((p / 0.87e9 - 1.0).abs() < 0.03, "{p}");
    }

    #[test]
    fn td4_4_row() {
        let s = unet(320, &[1, 2, 4], 2, &[0, 4, 4]);
        let r = count_macs(&s, 256).unwrap();
        assert!((r.gmacs() / 143.0 - 1.0).abs() < 0.05);
        assert!((r.attention_gmacs() / 84.0 - 1.0).abs() < 0.05);
        assert!((r.attention_share - 0.59).abs() < 0.05);
    }

    #[test]
    fn dit_rows() {
        let no_cap = DiTSpec {
            patch_size: 2,
            hidden_dim: 1024,
            depth: 56,
            num_heads: 16,
            token_dim: 1024,
            max_tokens: 77,
            caption_embedding: false,
            latent_channels: 4,
            ffn_mult: 4,
        };
        let p = count_params(&no_cap.clone().into()).unwrap() as f64;
        assert!((p / 0.95e9 - 1.0).abs() < 0.03, "{p}");

        let cap = DiTSpec {
            hidden_dim: 1152,
            depth: 28,
            caption_embedding: true,
            ..no_cap
        };
        let r = count_macs(&cap.into(), 256).unwrap();
        assert!((r.gmacs() / 139.0 - 1.0).abs() < 0.05, "{}", r.gmacs());
    }

    #[test]
    fn bad_resolution() {
        let s = unet(320, &[1, 2, 4], 2, &[0, 2, 10]);
        assert!(count_macs(&s, 255).is_err());
        assert!(count_macs(&s, 0).is_err());
        assert!(count_macs(&s, 8).is_err());
    }

    #[test]
    fn invalid_spec_is_not_counted() {
        let s = unet(320, &[1, 2, 4], 2, &[0, 2]);
        assert!(count_params(&s).is_err());
    }
}
