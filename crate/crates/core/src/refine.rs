//! Root-transform refinement of score triples.
//!
//! Each approach amplifies the positive and negative components with a root
//! and leaves the neutral component alone. Refined triples need not sum to 1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scorer::ScoreTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ApproachId {
    /// Identity.
    A1,
    /// Square root.
    A2,
    /// Fourth root.
    A3,
}

impl ApproachId {
    pub const ALL: [ApproachId; 3] = [ApproachId::A1, ApproachId::A2, ApproachId::A3];

    pub fn as_str(self) -> &'static str {
        match self {
            ApproachId::A1 => "A1",
            ApproachId::A2 => "A2",
            ApproachId::A3 => "A3",
        }
    }

    fn amplify(self, x: f64) -> f64 {
        match self {
            ApproachId::A1 => x,
            ApproachId::A2 => x.sqrt(),
            ApproachId::A3 => x.sqrt().sqrt(),
        }
    }
}

impl fmt::Display for ApproachId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("unknown approach {0:?} (expected A1, A2 or A3)")]
pub struct ParseApproachError(String);

impl FromStr for ApproachId {
    type Err = ParseApproachError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" | "1" => Ok(ApproachId::A1),
            "A2" | "2" => Ok(ApproachId::A2),
            "A3" | "3" => Ok(ApproachId::A3),
            _ => Err(ParseApproachError(s.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("score component {component} = {value} is outside [0, 1]")]
pub struct DomainError {
    pub component: &'static str,
    pub value: f64,
}

/// Applies `approach` to `base`.
pub fn refine(base: ScoreTriple, approach: ApproachId) -> Result<ScoreTriple, DomainError> {
    for (component, value) in [
        ("positive", base.positive),
        ("negative", base.negative),
        ("neutral", base.neutral),
    ] {
        if !(0.0..=1.0).contains(&value) {
            return Err(DomainError { component, value });
        }
    }
    Ok(ScoreTriple {
        positive: approach.amplify(base.positive),
        negative: approach.amplify(base.negative),
        neutral: base.neutral,
    })
}
