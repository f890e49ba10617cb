use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{LinguisticVariable, RuleBase};

/// Outcome of the completeness, consistency and continuity checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub complete: bool,
    pub consistent: bool,
    pub continuous: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.complete && self.consistent && self.continuous
    }
}

/// Rule numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// No rule covers this antecedent combination.
    Uncovered { antecedent: Vec<String> },
    /// Several rules with the same consequent cover one combination.
    MultiplyCovered {
        antecedent: Vec<String>,
        rules: Vec<usize>,
    },
    /// Rules with identical antecedents disagree on the consequent.
    Conflict {
        rules: Vec<usize>,
        consequents: Vec<String>,
    },
    /// A one-step antecedent change jumps more than one consequent level.
    Discontinuity {
        rule_a: usize,
        rule_b: usize,
        variable: String,
        consequent_a: String,
        consequent_b: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uncovered { antecedent } => {
                write!(f, "incomplete: no rule for ({})", antecedent.join(", "))
            }
            Violation::MultiplyCovered { antecedent, rules } => write!(
                f,
                "incomplete: ({}) covered by rules {}",
                antecedent.join(", "),
                join_numbers(rules)
            ),
            Violation::Conflict { rules, consequents } => write!(
                f,
                "inconsistent: rules {} share antecedents but conclude {}",
                join_numbers(rules),
                consequents.join(" / ")
            ),
            Violation::Discontinuity {
                rule_a,
                rule_b,
                variable,
                consequent_a,
                consequent_b,
            } => write!(
                f,
                "discontinuous: rules {rule_a} and {rule_b} differ by one step in {variable} \
                 but conclude {consequent_a} vs {consequent_b}"
            ),
        }
    }
}

fn join_numbers(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Checks that the rules cover every combination of input terms exactly once
/// (complete), never disagree on identical antecedents (consistent), and that
/// rules one adjacent term apart in a single variable conclude terms at most
/// one level apart (continuous). Term order is declaration order.
pub fn validate_rulebase(rb: &RuleBase) -> ValidationReport {
    let inputs = rb.inputs();
    let output = rb.output();
    let compiled = rb.compiled();
    let mut violations = Vec::new();

    // Full antecedent key per rule; rules that omit a variable match any of
    // its terms, so they are expanded when counting coverage.
    let mut by_key: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (idx, r) in compiled.iter().enumerate() {
        for key in expand(&r.antecedents, inputs) {
            by_key.entry(key).or_default().push(idx);
        }
    }

    let label = |v: usize, t: usize| inputs[v].terms()[t].label.clone();
    let out_label = |t: usize| output.terms()[t].label.clone();
    let key_labels = |key: &[usize]| key.iter().enumerate().map(|(v, &t)| label(v, t)).collect();

    let mut complete = true;
    let mut consistent = true;
    for key in all_keys(inputs) {
        match by_key.get(&key) {
            None => {
                complete = false;
                violations.push(Violation::Uncovered {
                    antecedent: key_labels(&key),
                });
            }
            Some(rules) if rules.len() > 1 => {
                let mut consequents: Vec<usize> =
                    rules.iter().map(|&r| compiled[r].consequent).collect();
                consequents.sort_unstable();
                consequents.dedup();
                let numbers = rules.iter().map(|r| r + 1).collect();
                if consequents.len() > 1 {
                    consistent = false;
                    violations.push(Violation::Conflict {
                        rules: numbers,
                        consequents: consequents.into_iter().map(out_label).collect(),
                    });
                } else {
                    complete = false;
                    violations.push(Violation::MultiplyCovered {
                        antecedent: key_labels(&key),
                        rules: numbers,
                    });
                }
            }
            Some(_) => {}
        }
    }

    let mut continuous = true;
    for (a, ra) in compiled.iter().enumerate() {
        for (b, rb_) in compiled.iter().enumerate().skip(a + 1) {
            if ra.antecedents.len() != rb_.antecedents.len() {
                continue;
            }
            let mut diff = None;
            let mut same_vars = true;
            let mut n_diff = 0;
            for (&(va, ta), &(vb, tb)) in ra.antecedents.iter().zip(&rb_.antecedents) {
                if va != vb {
                    same_vars = false;
                    break;
                }
                if ta != tb {
                    n_diff += 1;
                    diff = Some((va, ta.abs_diff(tb)));
                }
            }
            if !same_vars || n_diff != 1 {
                continue;
            }
            let (var, step) = diff.unwrap();
            if step == 1 && ra.consequent.abs_diff(rb_.consequent) > 1 {
                continuous = false;
                violations.push(Violation::Discontinuity {
                    rule_a: a + 1,
                    rule_b: b + 1,
                    variable: inputs[var].name().to_string(),
                    consequent_a: out_label(ra.consequent),
                    consequent_b: out_label(rb_.consequent),
                });
            }
        }
    }

    ValidationReport {
        complete,
        consistent,
        continuous,
        violations,
    }
}

fn all_keys(inputs: &[LinguisticVariable]) -> Vec<Vec<usize>> {
    let mut keys = vec![Vec::new()];
    for v in inputs {
        keys = keys
            .into_iter()
            .flat_map(|k| {
                (0..v.terms().len()).map(move |t| {
                    let mut k = k.clone();
                    k.push(t);
                    k
                })
            })
            .collect();
    }
    keys
}

fn expand(antecedents: &[(usize, usize)], inputs: &[LinguisticVariable]) -> Vec<Vec<usize>> {
    let mut keys = vec![Vec::new()];
    for (v, var) in inputs.iter().enumerate() {
        let choices: Vec<usize> = match antecedents.iter().find(|&&(w, _)| w == v) {
            Some(&(_, t)) => vec![t],
            None => (0..var.terms().len()).collect(),
        };
        keys = keys
            .into_iter()
            .flat_map(|k| {
                choices.iter().map(move |&t| {
                    let mut k = k.clone();
                    k.push(t);
                    k
                })
            })
            .collect();
    }
    keys
}

/// Grid spacing used by [`coverage_check`].
const COVERAGE_STEP: f64 = 1e-3;

/// True when some term has positive membership at every point of a grid
/// with spacing 1e-3 over the universe.
pub fn coverage_check(var: &LinguisticVariable) -> bool {
    let (lo, hi) = var.universe();
    let n = ((hi - lo) / COVERAGE_STEP).ceil() as usize;
    (0..=n).all(|i| {
        let x = (lo + i as f64 * (hi - lo) / n as f64).min(hi);
        var.terms().iter().any(|t| t.mf.eval(x) > 0.0)
    })
}
