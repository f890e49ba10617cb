use serde::{Deserialize, Serialize};

use super::{FuzzyError, MembershipFunction};

/// A labelled membership function. Declaration order is the term order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub mf: MembershipFunction,
}

/// Named quantity over a closed universe with ordered linguistic terms.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    name: String,
    universe: (f64, f64),
    terms: Vec<Term>,
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        universe: (f64, f64),
        terms: Vec<(String, MembershipFunction)>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        let (lo, hi) = universe;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(FuzzyError::InvalidUniverse {
                variable: name,
                lo,
                hi,
            });
        }
        if terms.is_empty() {
            return Err(FuzzyError::NoTerms(name));
        }
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (label, mf) in terms {
            mf.check()?;
            if out.iter().any(|t| t.label == label) {
                return Err(FuzzyError::DuplicateTerm {
                    variable: name,
                    term: label,
                });
            }
            let (a, d) = mf.support();
            if a < lo || d > hi {
                return Err(FuzzyError::SupportOutsideUniverse {
                    variable: name,
                    term: label,
                });
            }
            out.push(Term { label, mf });
        }
        Ok(Self {
            name,
            universe,
            terms: out,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> (f64, f64) {
        self.universe
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Position of `label` in the term order.
    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }

    pub fn term(&self, label: &str) -> Option<&MembershipFunction> {
        self.terms.iter().find(|t| t.label == label).map(|t| &t.mf)
    }

    /// Same terms and universe under another name.
    pub fn renamed(&self, name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..self.clone()
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.universe.0 && x <= self.universe.1
    }
}
