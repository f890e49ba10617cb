//! Declarative TOML form of a rule base.
//!
//! ```toml
//! [[inputs]]
//! name = "positive"
//! universe = [0.0, 1.0]
//! terms = [
//!     { label = "low", shape = "trapezoid", points = [0.0, 0.0, 0.2, 0.4] },
//!     { label = "medium", shape = "triangle", points = [0.2, 0.5, 0.8] },
//! ]
//!
//! [output]
//! name = "sentiment"
//! universe = [0.0, 1.0]
//! terms = [ ... ]
//!
//! [[rules]]
//! when = { positive = "low", negative = "low" }
//! then = "neutral"
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FuzzyError, FuzzyRule, LinguisticVariable, MembershipFunction, RuleBase};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub label: String,
    pub shape: String,
    pub points: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableSpec {
    pub name: String,
    pub universe: [f64; 2],
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub when: BTreeMap<String, String>,
    pub then: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FisFile {
    pub inputs: Vec<VariableSpec>,
    pub output: VariableSpec,
    #[serde(default)]
    pub rules: Vec<RuleSpec>,
}

impl TermSpec {
    fn from_mf(label: &str, mf: &MembershipFunction) -> Self {
        let (shape, points) = match *mf {
            MembershipFunction::Trapezoid { a, b, c, d } => ("trapezoid", vec![a, b, c, d]),
            MembershipFunction::Triangle { a, b, c } => ("triangle", vec![a, b, c]),
        };
        Self {
            label: label.to_string(),
            shape: shape.to_string(),
            points,
        }
    }

    fn to_mf(&self, variable: &str) -> Result<MembershipFunction, FuzzyError> {
        let bad = || {
            FuzzyError::Config(format!(
                "variable {variable}, term {}: {} needs {} points, got {}",
                self.label,
                self.shape,
                if self.shape == "triangle" { 3 } else { 4 },
                self.points.len()
            ))
        };
        match (self.shape.as_str(), self.points.as_slice()) {
            ("trapezoid", &[a, b, c, d]) => MembershipFunction::trapezoid(a, b, c, d),
            ("triangle", &[a, b, c]) => MembershipFunction::triangle(a, b, c),
            ("trapezoid" | "triangle", _) => Err(bad()),
            (other, _) => Err(FuzzyError::Config(format!(
                "variable {variable}, term {}: unknown shape {other:?}",
                self.label
            ))),
        }
    }
}

impl VariableSpec {
    pub fn from_variable(v: &LinguisticVariable) -> Self {
        Self {
            name: v.name().to_string(),
            universe: [v.universe().0, v.universe().1],
            terms: v
                .terms()
                .iter()
                .map(|t| TermSpec::from_mf(&t.label, &t.mf))
                .collect(),
        }
    }

    pub fn to_variable(&self) -> Result<LinguisticVariable, FuzzyError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.label.clone(), t.to_mf(&self.name)?)))
            .collect::<Result<Vec<_>, FuzzyError>>()?;
        LinguisticVariable::new(
            self.name.clone(),
            (self.universe[0], self.universe[1]),
            terms,
        )
    }
}

impl FisFile {
    pub fn parse(text: &str) -> Result<Self, FuzzyError> {
        toml::from_str(text).map_err(|e| FuzzyError::Config(e.message().to_string()))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, FuzzyError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| FuzzyError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn from_rulebase(rb: &RuleBase) -> Self {
        Self {
            inputs: rb
                .inputs()
                .iter()
                .map(VariableSpec::from_variable)
                .collect(),
            output: VariableSpec::from_variable(rb.output()),
            rules: rb
                .rules()
                .iter()
                .map(|r| RuleSpec {
                    when: r.antecedents.iter().cloned().collect(),
                    then: r.consequent.1.clone(),
                })
                .collect(),
        }
    }

    pub fn to_rulebase(&self) -> Result<RuleBase, FuzzyError> {
        let inputs = self
            .inputs
            .iter()
            .map(VariableSpec::to_variable)
            .collect::<Result<Vec<_>, _>>()?;
        let output = self.output.to_variable()?;
        // Antecedents follow input declaration order, whatever the table order.
        let rules = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| {
                for var in r.when.keys() {
                    if !inputs.iter().any(|v| v.name() == var) {
                        return Err(FuzzyError::Config(format!(
                            "rule {}: unknown input variable {var:?}",
                            i + 1
                        )));
                    }
                }
                let antecedents: Vec<(String, String)> = inputs
                    .iter()
                    .filter_map(|v| {
                        r.when
                            .get(v.name())
                            .map(|t| (v.name().to_string(), t.clone()))
                    })
                    .collect();
                Ok(FuzzyRule {
                    antecedents,
                    consequent: (output.name().to_string(), r.then.clone()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        RuleBase::new(inputs, output, rules)
    }

    /// Renders the file with one rule per line, inputs in declaration order.
    pub fn to_toml_string(&self) -> String {
        let mut s = String::new();
        for v in &self.inputs {
            s.push_str("[[inputs]]\n");
            write_variable(&mut s, v);
            s.push('\n');
        }
        s.push_str("[output]\n");
        write_variable(&mut s, &self.output);
        let order: Vec<&str> = self.inputs.iter().map(|v| v.name.as_str()).collect();
        for r in &self.rules {
            let mut keys: Vec<&String> = r.when.keys().collect();
            keys.sort_by_key(|k| order.iter().position(|o| o == k).unwrap_or(usize::MAX));
            let when: Vec<String> = keys
                .iter()
                .map(|k| format!("{} = {}", bare_or_quoted(k), quote(&r.when[*k])))
                .collect();
            let _ = write!(
                s,
                "\n[[rules]]\nwhen = {{ {} }}\nthen = {}\n",
                when.join(", "),
                quote(&r.then)
            );
        }
        s
    }
}

fn write_variable(s: &mut String, v: &VariableSpec) {
    let _ = writeln!(s, "name = {}", quote(&v.name));
    let _ = writeln!(
        s,
        "universe = [{}, {}]",
        num(v.universe[0]),
        num(v.universe[1])
    );
    s.push_str("terms = [\n");
    for t in &v.terms {
        let pts: Vec<String> = t.points.iter().map(|&p| num(p)).collect();
        let _ = writeln!(
            s,
            "    {{ label = {}, shape = {}, points = [{}] }},",
            quote(&t.label),
            quote(&t.shape),
            pts.join(", ")
        );
    }
    s.push_str("]\n");
}

fn num(x: f64) -> String {
    let s = format!("{x:?}");
    if s.contains('.') || s.contains('e') || s.contains("inf") || s.contains("NaN") {
        s
    } else {
        format!("{s}.0")
    }
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn bare_or_quoted(key: &str) -> String {
    let bare = !key.is_empty()
        && key
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if bare {
        key.to_string()
    } else {
        quote(key)
    }
}
