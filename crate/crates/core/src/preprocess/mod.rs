//! Deterministic English text cleaning.

pub mod porter;

use std::collections::HashSet;
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords_en.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stemmer {
    #[default]
    Porter,
    None,
}

/// Which cleaning steps run. Order is fixed; flags only switch steps off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Steps {
    pub lowercase: bool,
    pub brackets: bool,
    pub urls: bool,
    pub html_tags: bool,
    pub punctuation: bool,
    pub newlines: bool,
    pub digit_words: bool,
    pub stopwords: bool,
    pub stem: bool,
}

impl Default for Steps {
    fn default() -> Self {
        Self {
            lowercase: true,
            brackets: true,
            urls: true,
            html_tags: true,
            punctuation: true,
            newlines: true,
            digit_words: true,
            stopwords: true,
            stem: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CleanConfig {
    pub stopwords: HashSet<String>,
    pub stemmer: Stemmer,
    pub steps: Steps,
}

impl Default for CleanConfig {
    /// Shipped English stopword list and Porter stemming.
    fn default() -> Self {
        Self {
            stopwords: parse_stopwords(DEFAULT_STOPWORDS),
            stemmer: Stemmer::Porter,
            steps: Steps::default(),
        }
    }
}

impl CleanConfig {
    pub fn with_stopwords(stopwords: HashSet<String>) -> Self {
        Self {
            stopwords,
            ..Self::default()
        }
    }
}

#[derive(Debug, Error)]
#[error("cannot read stopword file {path}: {source}")]
pub struct StopwordError {
    pub path: String,
    #[source]
    pub source: std::io::Error,
}

/// One token per line; blank lines and `#` comments are skipped.
pub fn parse_stopwords(text: &str) -> HashSet<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_lowercase)
        .collect()
}

pub fn load_stopwords(path: impl AsRef<Path>) -> Result<HashSet<String>, StopwordError> {
    let path = path.as_ref();
    std::fs::read_to_string(path)
        .map(|t| parse_stopwords(&t))
        .map_err(|source| StopwordError {
            path: path.display().to_string(),
            source,
        })
}

struct Patterns {
    brackets: Regex,
    urls: Regex,
    tags: Regex,
}

fn patterns() -> &'static Patterns {
    static P: OnceLock<Patterns> = OnceLock::new();
    P.get_or_init(|| Patterns {
        brackets: Regex::new(r"\[.*?\]").unwrap(),
        urls: Regex::new(r"https?://\S+|www\.\S+").unwrap(),
        tags: Regex::new(r"<.*?>").unwrap(),
    })
}

/// Runs the cleaning steps in order: lowercase, drop `[...]` spans, URLs and
/// `<...>` tags, strip ASCII punctuation, turn newlines into spaces, drop
/// words containing a digit, drop stopwords, stem, and join with single
/// spaces.
pub fn clean_text(raw: &str, cfg: &CleanConfig) -> String {
    let s = &cfg.steps;
    let p = patterns();
    let mut t = if s.lowercase {
        raw.to_lowercase()
    } else {
        raw.to_string()
    };
    if s.brackets {
        t = p.brackets.replace_all(&t, "").into_owned();
    }
    if s.urls {
        t = p.urls.replace_all(&t, "").into_owned();
    }
    if s.html_tags {
        t = p.tags.replace_all(&t, "").into_owned();
    }
    if s.punctuation {
        t.retain(|c| !c.is_ascii_punctuation());
    }
    if s.newlines {
        t = t.replace(['\n', '\r'], " ");
    }
    let stem = s.stem && cfg.stemmer == Stemmer::Porter;
    t.split_whitespace()
        .filter(|w| !(s.digit_words && w.chars().any(char::is_numeric)))
        .filter(|w| !(s.stopwords && cfg.stopwords.contains(*w)))
        .map(|w| if stem { porter::stem(w) } else { w.to_string() })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Whitespace-delimited tokens in the raw text.
pub fn word_count(english_text: &str) -> usize {
    english_text.split_whitespace().count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_stops(words: &[&str]) -> CleanConfig {
        CleanConfig::with_stopwords(words.iter().map(|w| w.to_string()).collect())
    }

    #[test]
    fn examples() {
        let cfg = CleanConfig::default();
        assert_eq!(clean_text("", &cfg), "");
        assert_eq!(
            clean_text("Visit https://example.com [menu] NOW!!!", &cfg),
            "visit"
        );
        let no_now = small_stops(&["the"]);
        assert_eq!(
            clean_text("Visit https://example.com [menu] NOW!!!", &no_now),
            "visit now"
        );
        let pizza = small_stops(&["the", "was", "had", "no"]);
        assert_eq!(
            clean_text("The pizza was burnt, had no cheese", &pizza),
            "pizza burnt chees"
        );
    }

    #[test]
    fn tags_digits_and_newlines() {
        let cfg = small_stops(&[]);
        let mut no_stem = cfg.clone();
        no_stem.stemmer = Stemmer::None;
        assert_eq!(
            clean_text("<b>Great</b> 12 pieces\nfor 3x price (cheap)", &no_stem),
            "great pieces for price cheap"
        );
        assert_eq!(
            clean_text("Line one\nline two", &no_stem),
            "line one line two"
        );
    }

    #[test]
    fn steps_can_be_disabled() {
        let mut cfg = small_stops(&["the"]);
        cfg.steps.stopwords = false;
        cfg.steps.stem = false;
        assert_eq!(clean_text("The Cheese", &cfg), "the cheese");
    }

    #[test]
    fn stopword_file_format() {
        let set = parse_stopwords("# header\nthe\n\n  A  \nof # trailing comment\n");
        assert_eq!(set.len(), 3);
        assert!(set.contains("a") && set.contains("of"));
        assert_eq!(CleanConfig::default().stopwords.len(), 179);
    }

    #[test]
    fn word_counts() {
        assert_eq!(word_count(""), 0);
        assert_eq!(word_count("True customer respect."), 3);
        assert_eq!(word_count("Average."), 1);
        assert_eq!(word_count("  True \t customer\n\nrespect.  "), 3);
    }

    proptest! {
        #[test]
        fn output_is_normalised(raw in "[ -~\\n]{0,80}") {
            let cfg = CleanConfig::default();
            let out = clean_text(&raw, &cfg);
            prop_assert!(!out.chars().any(|c| c.is_uppercase() || c.is_ascii_digit() || c.is_ascii_punctuation()));
            prop_assert!(!out.contains("  ") && out.trim() == out);
            // A stem can coincide with a stopword, so check unstemmed tokens.
            let mut unstemmed = cfg.clone();
            unstemmed.stemmer = Stemmer::None;
            let pre = clean_text(&raw, &unstemmed);
            prop_assert!(pre.split(' ').all(|w| !cfg.stopwords.contains(w)));
        }

        #[test]
        fn idempotent_without_stemming(raw in "[ -~\\n]{0,80}") {
            let cfg = CleanConfig { stemmer: Stemmer::None, ..CleanConfig::default() };
            let once = clean_text(&raw, &cfg);
            prop_assert_eq!(clean_text(&once, &cfg), once);
        }

        #[test]
        fn word_count_ignores_spacing(words in prop::collection::vec("[a-z]{1,6}", 0..10), pad in "[ \\t\\n]{1,3}") {
            let tight = words.join(" ");
            let loose = format!("{pad}{}{pad}", words.join(&pad));
            prop_assert_eq!(word_count(&tight), word_count(&loose));
        }
    }
}
