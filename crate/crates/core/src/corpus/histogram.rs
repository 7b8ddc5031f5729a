use std::collections::BTreeMap;

use serde::Serialize;

use super::nouns::{normalize_token, NounExtractor};
use super::record::CaptionRecord;
use crate::error::{Error, Result};

/// Count of captions per bin (bin = words or nouns per caption).
pub type Histogram = BTreeMap<usize, u64>;

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CaptionHistograms {
    pub original_words: Histogram,
    pub original_nouns: Histogram,
    pub synthetic_words: Histogram,
    pub synthetic_nouns: Histogram,
}

/// Whitespace tokens left non-empty after punctuation stripping.
pub fn words(text: &str) -> usize {
    text.split_whitespace()
        .filter(|t| !normalize_token(t).is_empty())
        .count()
}

pub fn mean(h: &Histogram) -> Option<f64> {
    let n: u64 = h.values().sum();
    (n > 0).then(|| h.iter().map(|(&k, &c)| k as f64 * c as f64).sum::<f64>() / n as f64)
}

/// Word and noun counts of alt-texts and of every synthetic caption.
pub fn caption_histograms<'a, I, E>(corpus: I, extractor: &E) -> Result<CaptionHistograms>
where
    I: IntoIterator<Item = &'a CaptionRecord>,
    E: NounExtractor + ?Sized,
{
    let mut h = CaptionHistograms::default();
    let mut seen = 0usize;
    for r in corpus {
        seen += 1;
        *h.original_words.entry(words(&r.alt_text)).or_default() += 1;
        *h.original_nouns
            .entry(extractor.nouns(&r.alt_text).len())
            .or_default() += 1;
        for c in &r.synthetic_captions {
            *h.synthetic_words.entry(words(c)).or_default() += 1;
            *h.synthetic_nouns
                .entry(extractor.nouns(c).len())
                .or_default() += 1;
        }
    }
    if seen == 0 {
        return Err(Error::Empty("histograms of an empty corpus"));
    }
    Ok(h)
}

impl CaptionHistograms {
    pub fn mean_original_words(&self) -> Option<f64> {
        mean(&self.original_words)
    }

    pub fn mean_synthetic_words(&self) -> Option<f64> {
        mean(&self.synthetic_words)
    }
}
