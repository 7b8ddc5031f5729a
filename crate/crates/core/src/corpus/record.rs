use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One image's caption bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaptionRecord {
    pub image_id: String,
    pub alt_text: String,
    /// Confidence-ranked, highest first.
    #[serde(default)]
    pub synthetic_captions: Vec<String>,
    #[serde(default)]
    pub aesthetic_score: Option<f64>,
}

impl CaptionRecord {
    pub fn new(
        image_id: impl Into<String>,
        alt_text: impl Into<String>,
        synthetic: &[&str],
    ) -> Self {
        Self {
            image_id: image_id.into(),
            alt_text: alt_text.into(),
            synthetic_captions: synthetic.iter().map(|s| s.to_string()).collect(),
            aesthetic_score: None,
        }
    }

    pub fn with_aesthetic(mut self, score: f64) -> Self {
        self.aesthetic_score = Some(score);
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.image_id.is_empty() {
            return Err(Error::InvalidRecord("empty image_id".into()));
        }
        if let Some(a) = self.aesthetic_score {
            if !a.is_finite() {
                return Err(Error::InvalidRecord(format!(
                    "image `{}`: non-finite aesthetic score",
                    self.image_id
                )));
            }
        }
        Ok(())
    }
}
