use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use thiserror::Error;

use super::constants;

const EMBEDDED_LEXICON: &str = include_str!("../../data/vader_lexicon.txt");

/// Valence bounds of the rating scale used by the lexicon.
pub const VALENCE_RANGE: (f64, f64) = (-4.0, 4.0);

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    FileUnreadable {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon contains no usable entries")]
    EmptyLexicon,
}

/// A skipped lexicon line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineDiagnostic {
    /// 1-based line number.
    pub line: usize,
    pub message: String,
}

/// Token valences plus the booster and negator word lists.
#[derive(Debug, Clone)]
pub struct SentimentLexicon {
    entries: HashMap<String, f64>,
    boosters: HashMap<String, f64>,
    negators: HashSet<String>,
}

impl SentimentLexicon {
    /// Parses `token<TAB>valence[<TAB>...]` lines. Malformed lines are
    /// skipped and reported; later duplicates replace earlier ones.
    pub fn parse(text: &str) -> Result<(Self, Vec<LineDiagnostic>), LexiconError> {
        let mut entries = HashMap::new();
        let mut diagnostics = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let token = fields.next().unwrap_or_default();
            let Some(value) = fields.next() else {
                diagnostics.push(LineDiagnostic {
                    line: idx + 1,
                    message: "expected token<TAB>valence".into(),
                });
                continue;
            };
            let valence = match value.trim().parse::<f64>() {
                Ok(v) if v.is_finite() => v,
                _ => {
                    diagnostics.push(LineDiagnostic {
                        line: idx + 1,
                        message: format!("non-numeric valence {value:?}"),
                    });
                    continue;
                }
            };
            if !(VALENCE_RANGE.0..=VALENCE_RANGE.1).contains(&valence) {
                diagnostics.push(LineDiagnostic {
                    line: idx + 1,
                    message: format!("valence {valence} outside [-4, 4]"),
                });
                continue;
            }
            // Lookups are lowercased, so mixed-case keys could never match.
            if token.to_lowercase() != token {
                continue;
            }
            entries.insert(token.to_string(), valence);
        }
        if entries.is_empty() {
            return Err(LexiconError::EmptyLexicon);
        }
        Ok((Self::with_entries(entries), diagnostics))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<(Self, Vec<LineDiagnostic>), LexiconError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| LexiconError::FileUnreadable {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// The reference lexicon shipped with the crate.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_LEXICON)
            .expect("embedded lexicon parses")
            .0
    }

    fn with_entries(entries: HashMap<String, f64>) -> Self {
        let boosters = constants::BOOSTERS
            .iter()
            .map(|w| (w.to_string(), constants::BOOSTER_INCREMENT))
            .chain(
                constants::DAMPENERS
                    .iter()
                    .map(|w| (w.to_string(), constants::DAMPENER_INCREMENT)),
            )
            .collect();
        let negators = constants::NEGATORS.iter().map(|w| w.to_string()).collect();
        Self {
            entries,
            boosters,
            negators,
        }
    }

    /// Valence of a lowercase token.
    pub fn valence(&self, token: &str) -> Option<f64> {
        self.entries.get(token).copied()
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains_key(token)
    }

    pub fn booster(&self, token: &str) -> Option<f64> {
        self.boosters.get(token).copied()
    }

    pub fn is_negator(&self, token: &str) -> bool {
        self.negators.contains(token)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
