use serde::{Deserialize, Serialize};

/// One countable layer of a backbone inventory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub name: String,
    pub params: u64,
    pub macs: u64,
    /// Whether the layer's MACs land in the attention bucket.
    pub attention: bool,
}

/// Parameter count and MAC breakdown for one forward pass at batch 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub params: u64,
    pub total_macs: u64,
    pub attention_macs: u64,
    pub attention_share: f64,
    pub resolution: u32,
}

impl CostReport {
    pub fn from_layers(layers: &[Layer], resolution: u32) -> Self {
        let params = layers.iter().map(|l| l.params).sum();
        let total_macs: u64 = layers.iter().map(|l| l.macs).sum();
        let attention_macs: u64 = layers.iter().filter(|l| l.attention).map(|l| l.macs).sum();
        let attention_share = if total_macs == 0 {
            0.0
        } else {
            attention_macs as f64 / total_macs as f64
        };
        Self {
            params,
            total_macs,
            attention_macs,
            attention_share,
            resolution,
        }
    }

    pub fn params_billions(&self) -> f64 {
        self.params as f64 / 1e9
    }

    pub fn gmacs(&self) -> f64 {
        self.total_macs as f64 / 1e9
    }

    pub fn attention_gmacs(&self) -> f64 {
        self.attention_macs as f64 / 1e9
    }

    /// FLOPs of one forward pass under the 2 FLOPs per MAC convention.
    pub fn forward_flops(&self) -> u128 {
        2 * self.total_macs as u128
    }
}

/// Accumulates layers while walking an architecture.
#[derive(Debug, Default)]
pub(crate) struct Inventory {
    pub layers: Vec<Layer>,
    /// Tag applied to layers pushed from now on.
    pub attention: bool,
}

impl Inventory {
    pub fn push(&mut self, name: impl Into<String>, params: u64, macs: u64) {
        self.layers.push(Layer {
            name: name.into(),
            params,
            macs,
            attention: self.attention,
        });
    }

    /// Dense layer applied at `positions` locations.
    pub fn linear(
        &mut self,
        name: impl Into<String>,
        cin: u64,
        cout: u64,
        bias: bool,
        positions: u64,
    ) {
        let params = cin * cout + if bias { cout } else { 0 };
        self.push(name, params, cin * cout * positions);
    }

    /// k×k convolution producing an output of `area` pixels.
    pub fn conv(&mut self, name: impl Into<String>, cin: u64, cout: u64, k: u64, area: u64) {
        self.push(name, k * k * cin * cout + cout, k * k * cin * cout * area);
    }

    /// Normalization with a scale and shift per channel.
    pub fn norm(&mut self, name: impl Into<String>, channels: u64) {
        self.push(name, 2 * channels, 0);
    }
}
