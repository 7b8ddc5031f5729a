use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::nouns::NounExtractor;
use super::record::CaptionRecord;
use crate::error::{Error, Result};

/// Aggregate statistics of a caption corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_images: u64,
    /// Mean over records that carry a score; `None` if none do.
    pub mean_aesthetic: Option<f64>,
    pub missing_aesthetic: u64,
    pub image_noun_pairs: u64,
    pub unique_nouns: u64,
    pub nouns_per_image: f64,
    pub with_synthetic: bool,
}

/// Mergeable partial statistics. Memory grows only with the distinct noun
/// set and the set of seen image ids.
#[derive(Debug, Clone)]
pub struct CorpusAccumulator {
    with_synthetic: bool,
    n_images: u64,
    aesthetic_sum: f64,
    aesthetic_count: u64,
    image_noun_pairs: u64,
    nouns: HashSet<String>,
    ids: HashSet<String>,
}

impl CorpusAccumulator {
    pub fn new(with_synthetic: bool) -> Self {
        Self {
            with_synthetic,
            n_images: 0,
            aesthetic_sum: 0.0,
            aesthetic_count: 0,
            image_noun_pairs: 0,
            nouns: HashSet::new(),
            ids: HashSet::new(),
        }
    }

    pub fn push<E: NounExtractor + ?Sized>(
        &mut self,
        record: &CaptionRecord,
        extractor: &E,
    ) -> Result<()> {
        record.check()?;
        if !self.ids.insert(record.image_id.clone()) {
            return Err(Error::DuplicateImageId(record.image_id.clone()));
        }
        let mut image_nouns = extractor.nouns(&record.alt_text);
        if self.with_synthetic {
            for caption in &record.synthetic_captions {
                image_nouns.extend(extractor.nouns(caption));
            }
        }
        self.n_images += 1;
        if let Some(a) = record.aesthetic_score {
            self.aesthetic_sum += a;
            self.aesthetic_count += 1;
        }
        self.image_noun_pairs += image_nouns.len() as u64;
        self.nouns.extend(image_nouns);
        Ok(())
    }

    /// Combines two disjoint partial aggregates.
    pub fn merge(self, other: Self) -> Result<Self> {
        if self.with_synthetic != other.with_synthetic {
            return Err(Error::Domain(
                "cannot merge stats with different synthetic settings".into(),
            ));
        }
        let (mut big, small) = if self.ids.len() >= other.ids.len() {
            (self, other)
        } else {
            (other, self)
        };
        for id in small.ids {
            if !big.ids.insert(id.clone()) {
                return Err(Error::DuplicateImageId(id));
            }
        }
        big.n_images += small.n_images;
        big.aesthetic_sum += small.aesthetic_sum;
        big.aesthetic_count += small.aesthetic_count;
        big.image_noun_pairs += small.image_noun_pairs;
        big.nouns.extend(small.nouns);
        Ok(big)
    }

    pub fn finish(&self) -> Result<CorpusStats> {
        if self.n_images == 0 {
            return Err(Error::Empty("corpus has no records"));
        }
        let mean_aesthetic =
            (self.aesthetic_count > 0).then(|| self.aesthetic_sum / self.aesthetic_count as f64);
        Ok(CorpusStats {
            n_images: self.n_images,
            mean_aesthetic,
            missing_aesthetic: self.n_images - self.aesthetic_count,
            image_noun_pairs: self.image_noun_pairs,
            unique_nouns: self.nouns.len() as u64,
            nouns_per_image: self.image_noun_pairs as f64 / self.n_images as f64,
            with_synthetic: self.with_synthetic,
        })
    }
}

/// Single-pass statistics over a record stream.
pub fn compute_stats<'a, I, E>(
    corpus: I,
    extractor: &E,
    with_synthetic: bool,
) -> Result<CorpusStats>
where
    I: IntoIterator<Item = &'a CaptionRecord>,
    E: NounExtractor + ?Sized,
{
    let mut acc = CorpusAccumulator::new(with_synthetic);
    for record in corpus {
        acc.push(record, extractor)?;
    }
    acc.finish()
}

/// Aggregates `shards` contiguous chunks in parallel and merges them.
/// Produces the same counts as [`compute_stats`].
pub fn compute_stats_sharded<E>(
    corpus: &[CaptionRecord],
    extractor: &E,
    with_synthetic: bool,
    shards: usize,
) -> Result<CorpusStats>
where
    E: NounExtractor + Sync + ?Sized,
{
    let chunk = corpus.len().div_ceil(shards.max(1)).max(1);
    let partials = corpus
        .par_chunks(chunk)
        .map(|part| {
            let mut acc = CorpusAccumulator::new(with_synthetic);
            for r in part {
                acc.push(r, extractor)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    partials
        .into_iter()
        .try_fold(CorpusAccumulator::new(with_synthetic), |acc, p| {
            acc.merge(p)
        })?
        .finish()
}
