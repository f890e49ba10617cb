use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{AggregatedOutput, FuzzyError, LinguisticVariable};

/// `IF v1 IS t1 AND v2 IS t2 ... THEN out IS t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzyRule {
    pub antecedents: Vec<(String, String)>,
    pub consequent: (String, String),
}

impl FuzzyRule {
    pub fn new<S: Into<String>>(
        antecedents: impl IntoIterator<Item = (S, S)>,
        consequent: (S, S),
    ) -> Self {
        Self {
            antecedents: antecedents
                .into_iter()
                .map(|(v, t)| (v.into(), t.into()))
                .collect(),
            consequent: (consequent.0.into(), consequent.1.into()),
        }
    }
}

/// Firing strength of one rule (min of its antecedent degrees).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuleActivation {
    pub rule_index: usize,
    pub firing_strength: f64,
}

/// Rule with variable and term names resolved to indices.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct CompiledRule {
    /// `(input index, term index)`, sorted by input index.
    pub antecedents: Vec<(usize, usize)>,
    pub consequent: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: Vec<FuzzyRule>,
    compiled: Vec<CompiledRule>,
}

impl RuleBase {
    pub fn new(
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<FuzzyRule>,
    ) -> Result<Self, FuzzyError> {
        for (i, v) in inputs.iter().enumerate() {
            if inputs[..i].iter().any(|w| w.name() == v.name()) || v.name() == output.name() {
                return Err(FuzzyError::DuplicateVariable(v.name().to_string()));
            }
        }
        let compiled = rules
            .iter()
            .enumerate()
            .map(|(idx, rule)| compile(idx, rule, &inputs, &output))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            inputs,
            output,
            rules,
            compiled,
        })
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &[FuzzyRule] {
        &self.rules
    }

    pub(crate) fn compiled(&self) -> &[CompiledRule] {
        &self.compiled
    }

    /// Returns a copy with `rules` replaced, re-checking references.
    pub fn with_rules(&self, rules: Vec<FuzzyRule>) -> Result<Self, FuzzyError> {
        Self::new(self.inputs.clone(), self.output.clone(), rules)
    }

    /// Orders named inputs by declaration, checking presence and universes.
    pub fn ordered_inputs(&self, inputs: &HashMap<String, f64>) -> Result<Vec<f64>, FuzzyError> {
        self.inputs
            .iter()
            .map(|v| {
                inputs
                    .get(v.name())
                    .copied()
                    .ok_or_else(|| FuzzyError::MissingInput(v.name().to_string()))
            })
            .collect()
    }

    /// Firing strength of every rule for inputs given in declaration order.
    pub fn fire(&self, values: &[f64]) -> Result<Vec<RuleActivation>, FuzzyError> {
        self.check_values(values)?;
        Ok(self.fire_unchecked(values))
    }

    fn fire_unchecked(&self, values: &[f64]) -> Vec<RuleActivation> {
        // degree[input][term]
        let degrees: Vec<Vec<f64>> = self
            .inputs
            .iter()
            .zip(values)
            .map(|(v, &x)| v.terms().iter().map(|t| t.mf.eval(x)).collect())
            .collect();
        self.compiled
            .iter()
            .enumerate()
            .map(|(rule_index, r)| RuleActivation {
                rule_index,
                firing_strength: r
                    .antecedents
                    .iter()
                    .map(|&(v, t)| degrees[v][t])
                    .fold(1.0, f64::min),
            })
            .collect()
    }

    fn check_values(&self, values: &[f64]) -> Result<(), FuzzyError> {
        if values.len() < self.inputs.len() {
            return Err(FuzzyError::MissingInput(
                self.inputs[values.len()].name().to_string(),
            ));
        }
        for (v, &x) in self.inputs.iter().zip(values) {
            if !x.is_finite() || !v.contains(x) {
                return Err(FuzzyError::OutOfUniverse {
                    variable: v.name().to_string(),
                    value: x,
                });
            }
        }
        Ok(())
    }

    /// Mamdani inference: min over antecedents, clip consequents, max-merge.
    pub fn infer(&self, inputs: &HashMap<String, f64>) -> Result<AggregatedOutput, FuzzyError> {
        let values = self.ordered_inputs(inputs)?;
        self.infer_values(&values)
    }

    /// [`RuleBase::infer`] with inputs in declaration order.
    pub fn infer_values(&self, values: &[f64]) -> Result<AggregatedOutput, FuzzyError> {
        self.check_values(values)?;
        let activations = self.fire_unchecked(values);
        // Clipping one term at several heights and max-merging equals a
        // single clip at the highest.
        let mut level = vec![0.0f64; self.output.terms().len()];
        for act in &activations {
            let t = self.compiled[act.rule_index].consequent;
            level[t] = level[t].max(act.firing_strength);
        }
        let clips = self
            .output
            .terms()
            .iter()
            .zip(level)
            .map(|(t, h)| (t.mf, h))
            .collect();
        Ok(AggregatedOutput::from_clips(self.output.universe(), clips))
    }
}

fn compile(
    idx: usize,
    rule: &FuzzyRule,
    inputs: &[LinguisticVariable],
    output: &LinguisticVariable,
) -> Result<CompiledRule, FuzzyError> {
    if rule.antecedents.is_empty() {
        return Err(FuzzyError::EmptyAntecedents(idx + 1));
    }
    let mut antecedents = Vec::with_capacity(rule.antecedents.len());
    for (var, term) in &rule.antecedents {
        let v = inputs
            .iter()
            .position(|v| v.name() == var)
            .ok_or_else(|| FuzzyError::UnknownVariable(var.clone()))?;
        let t = inputs[v]
            .term_index(term)
            .ok_or_else(|| FuzzyError::UnknownTerm {
                variable: var.clone(),
                term: term.clone(),
            })?;
        if antecedents.iter().any(|&(w, _)| w == v) {
            return Err(FuzzyError::DuplicateAntecedent {
                rule: idx + 1,
                variable: var.clone(),
            });
        }
        antecedents.push((v, t));
    }
    antecedents.sort_unstable();
    let (var, term) = &rule.consequent;
    if var != output.name() {
        return Err(FuzzyError::UnknownVariable(var.clone()));
    }
    let consequent = output
        .term_index(term)
        .ok_or_else(|| FuzzyError::UnknownTerm {
            variable: var.clone(),
            term: term.clone(),
        })?;
    Ok(CompiledRule {
        antecedents,
        consequent,
    })
}
