//! File formats.
//!
//! - architecture specs: TOML or JSON documents with a `kind` tag
//!   (`unet` / `transformer`) and the spec field names as keys;
//! - scaling points: CSV records `label,x,score`;
//! - curve logs: CSV records `label,metric_name,step,value`, several curves
//!   per file, grouped by (label, metric_name);
//! - caption corpora: JSON Lines with `image_id`, `alt_text`,
//!   `synthetic_captions` and an optional `aesthetic_score`;
//! - lexicons: one noun per line.
//!
//! CSV inputs may start with a header row and may contain `#` comment lines.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::backbone::ArchSpec;
use crate::corpus::{CaptionRecord, Histogram, LexiconTagger};
use crate::curves::TrainingCurve;
use crate::error::{Error, Result};
use crate::scaling::ScalePoint;

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// Parses a spec document. JSON if it starts with `{`, TOML otherwise.
pub fn parse_spec(text: &str, origin: &str) -> Result<ArchSpec> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| Error::parse(origin, e))
    } else {
        toml::from_str(text).map_err(|e| Error::parse(origin, e))
    }
}

pub fn read_spec(path: &Path) -> Result<ArchSpec> {
    let mut text = String::new();
    open(path)?.read_to_string(&mut text)?;
    parse_spec(&text, &path.display().to_string())
}

pub fn spec_to_toml(spec: &ArchSpec) -> String {
    toml::to_string(spec).expect("spec serializes to TOML")
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader)
}

fn line_of(rec: &csv::StringRecord) -> u64 {
    rec.position().map(|p| p.line()).unwrap_or(0)
}

fn field<'r>(rec: &'r csv::StringRecord, i: usize, name: &str, origin: &str) -> Result<&'r str> {
    rec.get(i).ok_or_else(|| {
        Error::parse(
            format!("{origin}:{}", line_of(rec)),
            format!("missing field `{name}`"),
        )
    })
}

fn number<T: std::str::FromStr>(raw: &str, name: &str, origin: &str, line: u64) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    raw.parse::<T>().map_err(|e| {
        Error::parse(
            format!("{origin}:{line}"),
            format!("bad {name} `{raw}`: {e}"),
        )
    })
}

/// Reads `label,x,score` records.
pub fn parse_points<R: Read>(reader: R, origin: &str) -> Result<Vec<ScalePoint>> {
    let mut out = Vec::new();
    for (i, rec) in csv_reader(reader).records().enumerate() {
        let rec = rec.map_err(|e| Error::parse(origin, e))?;
        let line = line_of(&rec);
        let x_raw = field(&rec, 1, "x", origin)?;
        if i == 0 && x_raw.eq_ignore_ascii_case("x") {
            continue;
        }
        let label = field(&rec, 0, "label", origin)?;
        let x: f64 = number(x_raw, "x", origin, line)?;
        let score: f64 = number(field(&rec, 2, "score", origin)?, "score", origin, line)?;
        let point = ScalePoint::new(label, x, score)
            .map_err(|e| Error::Domain(format!("{origin}:{line}: {e}")))?;
        out.push(point);
    }
    Ok(out)
}

pub fn read_points(path: &Path) -> Result<Vec<ScalePoint>> {
    parse_points(open(path)?, &path.display().to_string())
}

/// Reads `label,metric_name,step,value` records into curves, in order of
/// first appearance. Samples within a curve are ordered by step.
pub fn parse_curves<R: Read>(reader: R, origin: &str) -> Result<Vec<TrainingCurve>> {
    let mut order: Vec<(String, String)> = Vec::new();
    let mut groups: HashMap<(String, String), Vec<(u64, f64)>> = HashMap::new();
    for (i, rec) in csv_reader(reader).records().enumerate() {
        let rec = rec.map_err(|e| Error::parse(origin, e))?;
        let line = line_of(&rec);
        let step_raw = field(&rec, 2, "step", origin)?;
        if i == 0 && step_raw.eq_ignore_ascii_case("step") {
            continue;
        }
        let key = (
            field(&rec, 0, "label", origin)?.to_string(),
            field(&rec, 1, "metric_name", origin)?.to_string(),
        );
        let step: u64 = number(step_raw, "step", origin, line)?;
        let value: f64 = number(field(&rec, 3, "value", origin)?, "value", origin, line)?;
        groups
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push((step, value));
    }
    order
        .into_iter()
        .map(|key| {
            let mut pts = groups.remove(&key).unwrap_or_default();
            pts.sort_by_key(|&(s, _)| s);
            TrainingCurve::new(key.0, key.1, pts)
        })
        .collect()
}

pub fn read_curves(path: &Path) -> Result<Vec<TrainingCurve>> {
    parse_curves(open(path)?, &path.display().to_string())
}

/// Streams caption records from JSON Lines. Blank lines are skipped.
pub fn corpus_records<R: BufRead>(
    reader: R,
    origin: String,
) -> impl Iterator<Item = Result<CaptionRecord>> {
    reader
        .lines()
        .enumerate()
        .filter_map(move |(i, line)| match line {
            Err(e) => Some(Err(Error::Io(e))),
            Ok(l) if l.trim().is_empty() => None,
            Ok(l) => Some(
                serde_json::from_str::<CaptionRecord>(&l)
                    .map_err(|e| Error::parse(format!("{origin}:{}", i + 1), e)),
            ),
        })
}

pub fn read_corpus(path: &Path) -> Result<Vec<CaptionRecord>> {
    corpus_records(open(path)?, path.display().to_string()).collect()
}

pub fn write_corpus<W: Write>(mut w: W, records: &[CaptionRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r).map_err(std::io::Error::from)?;
        writeln!(w)?;
    }
    Ok(())
}

pub fn read_lexicon(path: &Path) -> Result<LexiconTagger> {
    LexiconTagger::from_reader(open(path)?)
}

/// `bin,count` lines in ascending bin order.
pub fn write_histogram<W: Write>(mut w: W, h: &Histogram) -> Result<()> {
    writeln!(w, "bin,count")?;
    for (bin, count) in h {
        writeln!(w, "{bin},{count}")?;
    }
    Ok(())
}
