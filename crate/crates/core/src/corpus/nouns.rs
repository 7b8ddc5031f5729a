use std::collections::{BTreeSet, HashSet};
use std::io::BufRead;

use crate::error::Result;

/// Maps a caption to the set of nouns it mentions (lowercase).
pub trait NounExtractor {
    fn nouns(&self, text: &str) -> BTreeSet<String>;
}

impl<F> NounExtractor for F
where
    F: Fn(&str) -> BTreeSet<String>,
{
    fn nouns(&self, text: &str) -> BTreeSet<String> {
        self(text)
    }
}

/// Lowercases a whitespace token and strips punctuation from both ends.
pub(crate) fn normalize_token(token: &str) -> String {
    token
        .trim_matches(|c: char| !c.is_alphanumeric())
        .to_lowercase()
}

/// Lexicon lookup with a plural fallback: a token absent from the lexicon
/// counts as its singular form when stripping `s`/`es` (or `ies` → `y`)
/// yields a lexicon word.
#[derive(Debug, Clone, Default)]
pub struct LexiconTagger {
    nouns: HashSet<String>,
}

impl LexiconTagger {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let nouns = words
            .into_iter()
            .map(|w| normalize_token(w.as_ref()))
            .filter(|w| !w.is_empty())
            .collect();
        Self { nouns }
    }

    /// One word per line; blank lines and `#` comments are ignored.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut words = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let w = line.trim();
            if w.is_empty() || w.starts_with('#') {
                continue;
            }
            words.push(w.to_string());
        }
        Ok(Self::new(words))
    }

    pub fn len(&self) -> usize {
        self.nouns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nouns.is_empty()
    }

    fn lookup(&self, token: &str) -> Option<String> {
        if self.nouns.contains(token) {
            return Some(token.to_string());
        }
        let candidates = [
            token.strip_suffix("ies").map(|s| format!("{s}y")),
            token.strip_suffix("es").map(str::to_string),
            token.strip_suffix('s').map(str::to_string),
        ];
        candidates
            .into_iter()
            .flatten()
            .find(|c| !c.is_empty() && self.nouns.contains(c))
    }
}

impl NounExtractor for LexiconTagger {
    fn nouns(&self, text: &str) -> BTreeSet<String> {
        text.split_whitespace()
            .map(normalize_token)
            .filter_map(|t| self.lookup(&t))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_lexicon_words() {
        let t = LexiconTagger::new(["dog", "tree", "city"]);
        let n = t.nouns("A red Dog, under two trees; cities!");
        let got: Vec<_> = n.into_iter().collect();
        assert_eq!(got, vec!["city", "dog", "tree"]);
    }

    #[test]
    fn plural_fallback_needs_a_lexicon_stem() {
        let t = LexiconTagger::new(["box"]);
        assert_eq!(t.nouns("boxes runs").len(), 1);
        assert!(t.nouns("s es").is_empty());
    }

    #[test]
    fn reads_lexicon_file() {
        let t = LexiconTagger::from_reader("# nouns\ndog\n\n Cat \n".as_bytes()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.nouns("cat").len(), 1);
    }
}
