use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use diffscale::corpus::{
    caption_histograms, choose_caption, compute_stats_sharded, CaptionChoice, CorpusAccumulator,
    CorpusStats, MixPolicy, MixVariant, TOP_K,
};
use diffscale::io::{corpus_records, read_corpus, read_lexicon, write_histogram};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{emit, full, opt, sig3, Table};
use crate::Ctx;

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// JSON Lines corpus.
    corpus: PathBuf,

    /// Noun lexicon, one word per line.
    #[arg(long)]
    lexicon: PathBuf,

    /// Also collect nouns from synthetic captions.
    #[arg(long)]
    with_synthetic: bool,

    /// Aggregate in this many parallel shards. 1 streams the file.
    #[arg(long, default_value_t = 1)]
    shards: usize,

    /// Write word and noun histograms as CSV files into this directory.
    #[arg(long)]
    histograms: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Policy {
    Alt,
    Top1,
    Top5,
}

impl From<Policy> for MixVariant {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Alt => MixVariant::AltOnly,
            Policy::Top1 => MixVariant::Top1,
            Policy::Top5 => MixVariant::Top5,
        }
    }
}

#[derive(Debug, Args)]
pub struct MixArgs {
    corpus: PathBuf,

    #[arg(long)]
    seed: u64,

    #[arg(long, value_enum, default_value_t = Policy::Top5)]
    policy: Policy,

    /// Probability of training on the alt-text.
    #[arg(long, default_value_t = 0.5)]
    alt_probability: f64,

    /// Passes over the corpus.
    #[arg(long, default_value_t = 1)]
    epochs: u32,

    /// Write every drawn caption as CSV to this file.
    #[arg(long)]
    samples: Option<PathBuf>,
}

fn stats_table(s: &CorpusStats) -> Table {
    let mut t = Table::new(&["metric", "value", "display"]);
    let int = |v: u64| (v.to_string(), v.to_string());
    let rows = [
        ("images", int(s.n_images)),
        (
            "mean_aesthetic",
            (opt(s.mean_aesthetic, full), opt(s.mean_aesthetic, sig3)),
        ),
        ("missing_aesthetic", int(s.missing_aesthetic)),
        ("image_noun_pairs", int(s.image_noun_pairs)),
        ("unique_nouns", int(s.unique_nouns)),
        (
            "nouns_per_image",
            (full(s.nouns_per_image), sig3(s.nouns_per_image)),
        ),
        (
            "with_synthetic",
            (s.with_synthetic.to_string(), s.with_synthetic.to_string()),
        ),
    ];
    for (name, (value, display)) in rows {
        t.row(vec![name.into(), value, display]);
    }
    t
}

pub fn stats(ctx: &mut Ctx, args: StatsArgs) -> Result<()> {
    let lexicon = read_lexicon(&args.lexicon)?;
    let stats = if args.shards <= 1 && args.histograms.is_none() {
        let file = File::open(&args.corpus)
            .with_context(|| format!("cannot open {}", args.corpus.display()))?;
        let mut acc = CorpusAccumulator::new(args.with_synthetic);
        for record in corpus_records(BufReader::new(file), args.corpus.display().to_string()) {
            acc.push(&record?, &lexicon)?;
        }
        acc.finish()?
    } else {
        let records = read_corpus(&args.corpus)?;
        if let Some(dir) = &args.histograms {
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            let h = caption_histograms(&records, &lexicon)?;
            for (name, hist) in [
                ("original_words", &h.original_words),
                ("original_nouns", &h.original_nouns),
                ("synthetic_words", &h.synthetic_words),
                ("synthetic_nouns", &h.synthetic_nouns),
            ] {
                let path = dir.join(format!("{name}.csv"));
                let file = File::create(&path)
                    .with_context(|| format!("cannot create {}", path.display()))?;
                write_histogram(BufWriter::new(file), hist)?;
            }
        }
        compute_stats_sharded(&records, &lexicon, args.with_synthetic, args.shards.max(1))?
    };
    emit(&mut ctx.out, ctx.format, &stats_table(&stats), &stats)
}

#[derive(Debug, Serialize)]
struct ChoiceCount {
    choice: String,
    count: u64,
    frequency: f64,
}

#[derive(Debug, Serialize)]
struct MixRecord {
    seed: u64,
    policy: MixPolicy,
    draws: u64,
    counts: Vec<ChoiceCount>,
}

fn choice_name(c: CaptionChoice) -> String {
    match c {
        CaptionChoice::Alt => "alt".into(),
        CaptionChoice::Synthetic(rank) => format!("synthetic_{rank}"),
    }
}

pub fn mix(ctx: &mut Ctx, args: MixArgs) -> Result<()> {
    let policy = MixPolicy::new(args.policy.into(), args.alt_probability)?;
    let records = read_corpus(&args.corpus)?;
    let mut samples = match &args.samples {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = csv::Writer::from_writer(BufWriter::new(file));
            w.write_record(["epoch", "image_id", "choice", "caption"])?;
            Some(w)
        }
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    // index 0 is the alt-text, i is synthetic rank i
    let mut counts = vec![0u64; TOP_K + 1];
    let mut draws = 0u64;
    for epoch in 0..args.epochs {
        for r in &records {
            let c = choose_caption(r, &policy, &mut rng);
            let (slot, caption) = match c {
                CaptionChoice::Alt => (0, r.alt_text.as_str()),
                CaptionChoice::Synthetic(rank) => (rank, r.synthetic_captions[rank - 1].as_str()),
            };
            counts[slot] += 1;
            draws += 1;
            if let Some(w) = samples.as_mut() {
                w.write_record([
                    epoch.to_string().as_str(),
                    &r.image_id,
                    &choice_name(c),
                    caption,
                ])?;
            }
        }
    }
    if let Some(mut w) = samples {
        w.flush()?;
    }
    let counts: Vec<ChoiceCount> = counts
        .into_iter()
        .enumerate()
        .map(|(slot, count)| ChoiceCount {
            choice: choice_name(if slot == 0 {
                CaptionChoice::Alt
            } else {
                CaptionChoice::Synthetic(slot)
            }),
            count,
            frequency: if draws == 0 {
                0.0
            } else {
                count as f64 / draws as f64
            },
        })
        .collect();
    let mut table = Table::new(&["choice", "count", "frequency", "display"]);
    for c in &counts {
        table.row(vec![
            c.choice.clone(),
            c.count.to_string(),
            full(c.frequency),
            sig3(c.frequency),
        ]);
    }
    let record = MixRecord {
        seed: args.seed,
        policy,
        draws,
        counts,
    };
    emit(&mut ctx.out, ctx.format, &table, &record)?;
    ctx.out.flush()?;
    Ok(())
}
