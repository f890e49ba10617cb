//! General Mamdani inference: membership functions, linguistic variables,
//! AND rule bases with min/max inference, exact centroid defuzzification
//! and rule-base validation.

mod aggregate;
mod config;
mod membership;
mod rules;
mod validate;
mod variable;

use thiserror::Error;

pub use aggregate::{AggregatedOutput, Segment, ZERO_AREA};
pub use config::{FisFile, RuleSpec, TermSpec, VariableSpec};
pub use membership::MembershipFunction;
pub use rules::{FuzzyRule, RuleActivation, RuleBase};
pub use validate::{coverage_check, validate_rulebase, ValidationReport, Violation};
pub use variable::{LinguisticVariable, Term};

#[derive(Debug, Error)]
pub enum FuzzyError {
    #[error("invalid membership function {0}")]
    InvalidShape(String),
    #[error("variable {variable}: invalid universe [{lo}, {hi}]")]
    InvalidUniverse { variable: String, lo: f64, hi: f64 },
    #[error("variable {0} has no terms")]
    NoTerms(String),
    #[error("variable {variable}: duplicate term {term}")]
    DuplicateTerm { variable: String, term: String },
    #[error("variable {variable}: support of term {term} leaves the universe")]
    SupportOutsideUniverse { variable: String, term: String },
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("variable {variable} has no term {term}")]
    UnknownTerm { variable: String, term: String },
    #[error("rule {rule}: variable {variable} appears more than once")]
    DuplicateAntecedent { rule: usize, variable: String },
    #[error("rule {0} has no antecedents")]
    EmptyAntecedents(usize),
    #[error("missing input for variable {0}")]
    MissingInput(String),
    #[error("input {variable} = {value} is outside its universe")]
    OutOfUniverse { variable: String, value: f64 },
    #[error("aggregated output has zero area (no rule fired)")]
    ZeroArea,
    #[error("sampling step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("FIS config: {0}")]
    Config(String),
    #[error("FIS config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Centroid of an aggregate, computed exactly.
pub fn defuzz_centroid(agg: &AggregatedOutput) -> Result<f64, FuzzyError> {
    agg.centroid()
}
