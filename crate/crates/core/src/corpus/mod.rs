//! Caption dataset statistics, caption-length histograms and the
//! synthetic-caption mixing sampler.

mod histogram;
mod mixing;
mod nouns;
mod record;
mod stats;

pub use histogram::{caption_histograms, mean, words, CaptionHistograms, Histogram};
pub use mixing::{choose_caption, sample_caption, CaptionChoice, MixPolicy, MixVariant, TOP_K};
pub use nouns::{LexiconTagger, NounExtractor};
pub use record::CaptionRecord;
pub use stats::{compute_stats, compute_stats_sharded, CorpusAccumulator, CorpusStats};
