//! Record-level wiring: clean, score, refine, infer, classify.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::dominant_group;
use crate::corpus::{ReviewRecord, ScoredRecord};
use crate::exec::Exec;
use crate::preprocess::{clean_text, CleanConfig};
use crate::refine::{refine, ApproachId};
use crate::scorer::{score, SentimentLexicon};
use crate::sentiment_fis::{default_config, SentimentFis};

/// Which text the lexicon scorer reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreOn {
    /// The English text as ingested.
    #[default]
    Raw,
    /// The cleaned, stemmed text.
    Clean,
}

impl fmt::Display for ScoreOn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreOn::Raw => "raw",
            ScoreOn::Clean => "clean",
        })
    }
}

impl FromStr for ScoreOn {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "raw" => Ok(ScoreOn::Raw),
            "clean" => Ok(ScoreOn::Clean),
            _ => Err(format!("expected raw or clean, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Refine,
    Fis,
    Classify,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Refine => "refine",
            Stage::Fis => "fis",
            Stage::Classify => "classify",
        })
    }
}

#[derive(Debug, Error)]
#[error("{stage} failed for record {id} ({approach}): {cause}")]
pub struct PipelineError {
    pub stage: Stage,
    pub id: String,
    pub approach: ApproachId,
    pub cause: String,
}

#[derive(Debug, Clone)]
pub struct Pipeline {
    pub lexicon: SentimentLexicon,
    pub clean: CleanConfig,
    pub fis: SentimentFis,
    pub approaches: Vec<ApproachId>,
    pub score_on: ScoreOn,
    pub exec: Exec,
}

impl Pipeline {
    /// Embedded lexicon and stopwords, default FIS, all approaches, raw text.
    pub fn with_defaults() -> Self {
        Self {
            lexicon: SentimentLexicon::embedded(),
            clean: CleanConfig::default(),
            fis: default_config()
                .build()
                .expect("default FIS config is valid"),
            approaches: ApproachId::ALL.to_vec(),
            score_on: ScoreOn::Raw,
            exec: Exec::default(),
        }
    }

    pub fn score_record(&self, rec: &ReviewRecord) -> Result<ScoredRecord, PipelineError> {
        let mut record = rec.clone();
        let cleaned = clean_text(&record.english_text, &self.clean);
        let base_scores = match self.score_on {
            ScoreOn::Raw => score(&record.english_text, &self.lexicon),
            ScoreOn::Clean => score(&cleaned, &self.lexicon),
        };
        record.clean_text = Some(cleaned);

        let mut out = ScoredRecord {
            record,
            base_scores,
            refined: Default::default(),
            fis_output: Default::default(),
            group: Default::default(),
        };
        for &a in &self.approaches {
            let fail = |stage, cause: String| PipelineError {
                stage,
                id: rec.id.clone(),
                approach: a,
                cause,
            };
            let refined = refine(base_scores, a).map_err(|e| fail(Stage::Refine, e.to_string()))?;
            let y = self
                .fis
                .evaluate(refined)
                .map_err(|e| fail(Stage::Fis, e.to_string()))?;
            let g = dominant_group(y).map_err(|e| fail(Stage::Classify, e.to_string()))?;
            out.refined.insert(a, refined);
            out.fis_output.insert(a, y);
            out.group.insert(a, g);
        }
        Ok(out)
    }

    /// Scores every record; on failure reports the first failing record in
    /// input order, whatever the schedule.
    pub fn run(&self, records: &[ReviewRecord]) -> Result<Vec<ScoredRecord>, PipelineError> {
        self.exec
            .map(records, |r| self.score_record(r))
            .into_iter()
            .collect()
    }
}
