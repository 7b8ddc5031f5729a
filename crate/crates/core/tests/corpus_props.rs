use std::collections::{BTreeSet, HashSet};

use diffscale::corpus::{
    caption_histograms, compute_stats, compute_stats_sharded, CaptionRecord, CorpusAccumulator,
    LexiconTagger, NounExtractor,
};
use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORDS: [&str; 12] = [
    "dog", "cat", "tree", "red", "runs", "a", "the", "sky", "blue", "house", "big", "car",
];

fn lexicon() -> LexiconTagger {
    LexiconTagger::new(["dog", "cat", "tree", "sky", "house", "car"])
}

fn caption() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(WORDS.to_vec()), 0..8).prop_map(|w| w.join(" "))
}

fn corpus() -> impl Strategy<Value = Vec<CaptionRecord>> {
    prop::collection::vec(
        (
            caption(),
            prop::collection::vec(caption(), 0..=5),
            prop::option::of(4.0f64..7.0),
        ),
        1..60,
    )
    .prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(i, (alt, syn, ae))| CaptionRecord {
                image_id: format!("img{i}"),
                alt_text: alt,
                synthetic_captions: syn,
                aesthetic_score: ae,
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn synthetic_captions_only_add_pairs(c in corpus()) {
        let lex = lexicon();
        let with = compute_stats(&c, &lex, true).unwrap();
        let without = compute_stats(&c, &lex, false).unwrap();
        prop_assert!(with.image_noun_pairs >= without.image_noun_pairs);
        prop_assert!(with.unique_nouns >= without.unique_nouns);
        prop_assert!(with.unique_nouns <= with.image_noun_pairs);
    }

    #[test]
    fn order_independent(c in corpus(), seed in any::<u64>()) {
        let lex = lexicon();
        let mut shuffled = c.clone();
        let n = shuffled.len();
        for i in 0..n {
            let j = (seed.wrapping_mul(i as u64 + 1).rotate_left(17) % n as u64) as usize;
            shuffled.swap(i, j);
        }
        let a = compute_stats(&c, &lex, true).unwrap();
        let b = compute_stats(&shuffled, &lex, true).unwrap();
        prop_assert_eq!(a.image_noun_pairs, b.image_noun_pairs);
        prop_assert_eq!(a.unique_nouns, b.unique_nouns);
        match (a.mean_aesthetic, b.mean_aesthetic) {
            (Some(x), Some(y)) => prop_assert!((x - y).abs() < 1e-12),
            (x, y) => prop_assert_eq!(x, y),
        }
    }

    #[test]
    fn disjoint_merge(c1 in corpus(), c2 in corpus()) {
        let lex = lexicon();
        let c2: Vec<CaptionRecord> = c2
            .into_iter()
            .map(|r| CaptionRecord { image_id: format!("b-{}", r.image_id), ..r })
            .collect();
        let s1 = compute_stats(&c1, &lex, true).unwrap();
        let s2 = compute_stats(&c2, &lex, true).unwrap();
        let mut a1 = CorpusAccumulator::new(true);
        c1.iter().for_each(|r| a1.push(r, &lex).unwrap());
        let mut a2 = CorpusAccumulator::new(true);
        c2.iter().for_each(|r| a2.push(r, &lex).unwrap());
        let merged = a1.merge(a2).unwrap().finish().unwrap();
        prop_assert_eq!(merged.n_images, s1.n_images + s2.n_images);
        prop_assert_eq!(merged.image_noun_pairs, s1.image_noun_pairs + s2.image_noun_pairs);
        prop_assert!(merged.unique_nouns <= s1.unique_nouns + s2.unique_nouns);
        prop_assert!(merged.unique_nouns >= s1.unique_nouns.max(s2.unique_nouns));

        let both: Vec<CaptionRecord> = c1.iter().chain(&c2).cloned().collect();
        let single = compute_stats(&both, &lex, true).unwrap();
        prop_assert_eq!(single.unique_nouns, merged.unique_nouns);
        let sharded = compute_stats_sharded(&both, &lex, true, 3).unwrap();
        prop_assert_eq!(sharded.image_noun_pairs, single.image_noun_pairs);
        prop_assert_eq!(sharded.unique_nouns, single.unique_nouns);
    }
}

#[test]
fn custom_extractor_plugs_in() {
    let capitalized = |t: &str| -> BTreeSet<String> {
        t.split_whitespace()
            .filter(|w| w.chars().next().is_some_and(char::is_uppercase))
            .map(str::to_lowercase)
            .collect()
    };
    let recs = [CaptionRecord::new(
        "1",
        "Paris at night with Eiffel",
        &["Paris again"],
    )];
    let s = compute_stats(&recs, &capitalized, true).unwrap();
    assert_eq!(s.image_noun_pairs, 2);
    let uniq: HashSet<_> = capitalized.nouns("Paris Paris").into_iter().collect();
    assert_eq!(uniq.len(), 1);
}

#[test]
fn descriptive_synthetic_captions_shift_histograms_up() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sentence = |lo: usize, hi: usize| -> String {
        let n = rng.gen_range(lo..=hi);
        (0..n)
            .map(|_| *WORDS.choose(&mut rng).unwrap())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let corpus: Vec<CaptionRecord> = (0..100)
        .map(|i| CaptionRecord {
            image_id: i.to_string(),
            alt_text: sentence(1, 6),
            synthetic_captions: (0..3).map(|_| sentence(8, 20)).collect(),
            aesthetic_score: None,
        })
        .collect();
    let h = caption_histograms(&corpus, &lexicon()).unwrap();
    assert_eq!(h.original_words.values().sum::<u64>(), 100);
    assert_eq!(h.synthetic_words.values().sum::<u64>(), 300);
    assert!(h.mean_synthetic_words().unwrap() > h.mean_original_words().unwrap());
    let mean_nouns =
        |hist: &std::collections::BTreeMap<usize, u64>| diffscale::corpus::mean(hist).unwrap();
    assert!(mean_nouns(&h.synthetic_nouns) > mean_nouns(&h.original_nouns));
}
