//! The three-input sentiment FIS: shared low/medium/high input terms, three
//! output terms, the 27-rule table, evaluation and breakpoint calibration.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Exec;
use crate::fuzzy::{
    coverage_check, FisFile, FuzzyError, FuzzyRule, LinguisticVariable, MembershipFunction,
    RuleBase,
};
use crate::refine::{refine, ApproachId, DomainError};
use crate::scorer::ScoreTriple;

pub const INPUT_NAMES: [&str; 3] = ["positive", "negative", "neutral"];
pub const INPUT_TERMS: [&str; 3] = ["low", "medium", "high"];
pub const OUTPUT_NAME: &str = "sentiment";
pub const OUTPUT_TERMS: [&str; 3] = ["negative", "neutral", "positive"];

/// Consequent index into [`OUTPUT_TERMS`] for each rule, ordered by
/// (positive, negative, neutral) level with neutral varying fastest.
const RULE_TABLE: [usize; 27] = [
    1, 1, 1, 0, 0, 0, 0, 0, 0, // positive low
    2, 2, 2, 1, 1, 1, 0, 0, 0, // positive medium
    2, 2, 2, 2, 2, 2, 1, 1, 1, // positive high
];

/// Saturated-positive centroid of the default output terms.
pub const SATURATED_POSITIVE: f64 = 0.318_333_333_333_333_3 / 0.4;
/// Mirror image of [`SATURATED_POSITIVE`].
pub const SATURATED_NEGATIVE: f64 = 1.0 - SATURATED_POSITIVE;

#[derive(Debug, Error)]
pub enum SentimentFisError {
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("invalid input parameters: {0}")]
    InvalidParams(String),
    #[error("rule base lacks input variable {0:?}")]
    MissingVariable(String),
    #[error("calibration grid has no admissible candidate")]
    EmptyGrid,
    #[error("calibration needs at least one anchor")]
    NoAnchors,
    #[error("anchor file line {line}: {message}")]
    AnchorFile { line: u64, message: String },
}

/// Breakpoints of the input terms: low = Trapezoid(0, 0, l1, l2),
/// medium = Triangle(m_lo, m_peak, m_hi), high = Trapezoid(h1, h2, 1, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InputParams {
    pub l1: f64,
    pub l2: f64,
    pub m_lo: f64,
    pub m_peak: f64,
    pub m_hi: f64,
    pub h1: f64,
    pub h2: f64,
}

impl InputParams {
    pub const NAMES: [&'static str; 7] = ["l1", "l2", "m_lo", "m_peak", "m_hi", "h1", "h2"];

    /// Evenly spaced ternary partition of [0, 1].
    pub const SYMMETRIC: InputParams = InputParams {
        l1: 0.2,
        l2: 0.4,
        m_lo: 0.2,
        m_peak: 0.5,
        m_hi: 0.8,
        h1: 0.6,
        h2: 0.8,
    };

    /// Breakpoints fitted to [`reference_anchors`] (an estimate; see README).
    pub const CALIBRATED: InputParams = InputParams {
        l1: 0.2,
        l2: 0.5,
        m_lo: 0.3,
        m_peak: 0.5,
        m_hi: 0.8,
        h1: 0.5,
        h2: 0.7,
    };

    pub fn to_array(self) -> [f64; 7] {
        [
            self.l1,
            self.l2,
            self.m_lo,
            self.m_peak,
            self.m_hi,
            self.h1,
            self.h2,
        ]
    }

    pub fn from_array(p: [f64; 7]) -> Self {
        Self {
            l1: p[0],
            l2: p[1],
            m_lo: p[2],
            m_peak: p[3],
            m_hi: p[4],
            h1: p[5],
            h2: p[6],
        }
    }

    /// Breakpoints in [0, 1] and ordered within each term.
    pub fn is_ordered(&self) -> bool {
        let p = self.to_array();
        p.iter().all(|x| (0.0..=1.0).contains(x))
            && self.l1 <= self.l2
            && self.m_lo <= self.m_peak
            && self.m_peak <= self.m_hi
            && self.h1 <= self.h2
    }

    /// Term functions in [`INPUT_TERMS`] order.
    pub fn terms(&self) -> Result<[MembershipFunction; 3], SentimentFisError> {
        let p = self.to_array();
        if p.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(SentimentFisError::InvalidParams(format!(
                "breakpoints must lie in [0, 1]: {self}"
            )));
        }
        let bad = |e: FuzzyError| SentimentFisError::InvalidParams(format!("{self}: {e}"));
        Ok([
            MembershipFunction::trapezoid(0.0, 0.0, self.l1, self.l2).map_err(bad)?,
            MembershipFunction::triangle(self.m_lo, self.m_peak, self.m_hi).map_err(bad)?,
            MembershipFunction::trapezoid(self.h1, self.h2, 1.0, 1.0).map_err(bad)?,
        ])
    }

    /// Builds one input variable, checking that the terms cover [0, 1].
    pub fn variable(&self, name: &str) -> Result<LinguisticVariable, SentimentFisError> {
        let terms = self.terms()?;
        let var = LinguisticVariable::new(
            name,
            (0.0, 1.0),
            INPUT_TERMS
                .iter()
                .map(|t| t.to_string())
                .zip(terms)
                .collect(),
        )?;
        if !coverage_check(&var) {
            return Err(SentimentFisError::InvalidParams(format!(
                "terms leave part of [0, 1] uncovered: {self}"
            )));
        }
        Ok(var)
    }
}

impl fmt::Display for InputParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Self::NAMES
            .iter()
            .zip(self.to_array())
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// How the aggregate is defuzzified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Defuzz {
    /// Closed-form centroid of the piecewise-linear aggregate.
    Exact,
    /// Centroid of the aggregate sampled with spacing `step`.
    Sampled { step: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentimentFisConfig {
    pub input_params: InputParams,
    /// Output terms in [`OUTPUT_TERMS`] order.
    pub output_terms: [MembershipFunction; 3],
    pub rules: Vec<FuzzyRule>,
    pub defuzz: Defuzz,
}

pub fn output_terms() -> [MembershipFunction; 3] {
    [
        MembershipFunction::Trapezoid {
            a: 0.0,
            b: 0.0,
            c: 0.3,
            d: 0.5,
        },
        MembershipFunction::Triangle {
            a: 0.3,
            b: 0.5,
            c: 0.7,
        },
        MembershipFunction::Trapezoid {
            a: 0.5,
            b: 0.7,
            c: 1.0,
            d: 1.0,
        },
    ]
}

/// The 27 rules in table order.
pub fn table_rules() -> Vec<FuzzyRule> {
    RULE_TABLE
        .iter()
        .enumerate()
        .map(|(i, &out)| {
            let levels = [i / 9, (i / 3) % 3, i % 3];
            FuzzyRule::new(
                INPUT_NAMES
                    .iter()
                    .zip(levels)
                    .map(|(v, l)| (v.to_string(), INPUT_TERMS[l].to_string())),
                (OUTPUT_NAME.to_string(), OUTPUT_TERMS[out].to_string()),
            )
        })
        .collect()
}

/// Calibrated input breakpoints, default output terms, the 27 table rules,
/// exact defuzzification.
pub fn default_config() -> SentimentFisConfig {
    SentimentFisConfig::with_params(InputParams::CALIBRATED)
}

/// As [`default_config`] with the evenly spaced input partition.
pub fn symmetric_config() -> SentimentFisConfig {
    SentimentFisConfig::with_params(InputParams::SYMMETRIC)
}

impl SentimentFisConfig {
    pub fn with_params(input_params: InputParams) -> Self {
        Self {
            input_params,
            output_terms: output_terms(),
            rules: table_rules(),
            defuzz: Defuzz::Exact,
        }
    }

    pub fn rulebase(&self) -> Result<RuleBase, SentimentFisError> {
        let shared = self.input_params.variable(INPUT_NAMES[0])?;
        let inputs = INPUT_NAMES
            .iter()
            .map(|n| shared.renamed(n))
            .collect::<Vec<_>>();
        let output = LinguisticVariable::new(
            OUTPUT_NAME,
            (0.0, 1.0),
            OUTPUT_TERMS
                .iter()
                .map(|t| t.to_string())
                .zip(self.output_terms)
                .collect(),
        )?;
        Ok(RuleBase::new(inputs, output, self.rules.clone())?)
    }

    pub fn build(&self) -> Result<SentimentFis, SentimentFisError> {
        SentimentFis::from_rulebase(self.rulebase()?, self.defuzz)
    }

    pub fn to_fis_file(&self) -> Result<FisFile, SentimentFisError> {
        Ok(FisFile::from_rulebase(&self.rulebase()?))
    }
}

/// A compiled sentiment FIS. Inputs are looked up by name, so any rule base
/// with `positive`, `negative` and `neutral` inputs qualifies.
#[derive(Debug, Clone)]
pub struct SentimentFis {
    rb: RuleBase,
    /// Position of each rule-base input in (positive, negative, neutral).
    slots: Vec<usize>,
    defuzz: Defuzz,
}

impl SentimentFis {
    pub fn from_rulebase(rb: RuleBase, defuzz: Defuzz) -> Result<Self, SentimentFisError> {
        for name in INPUT_NAMES {
            if !rb.inputs().iter().any(|v| v.name() == name) {
                return Err(SentimentFisError::MissingVariable(name.to_string()));
            }
        }
        let slots = rb
            .inputs()
            .iter()
            .map(|v| {
                INPUT_NAMES
                    .iter()
                    .position(|n| *n == v.name())
                    .ok_or_else(|| {
                        SentimentFisError::InvalidParams(format!("unexpected input {:?}", v.name()))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { rb, slots, defuzz })
    }

    pub fn from_fis_file(file: &FisFile, defuzz: Defuzz) -> Result<Self, SentimentFisError> {
        Self::from_rulebase(file.to_rulebase()?, defuzz)
    }

    pub fn rulebase(&self) -> &RuleBase {
        &self.rb
    }

    pub fn defuzz(&self) -> Defuzz {
        self.defuzz
    }

    /// Crisp sentiment in [0, 1] for one triple.
    pub fn evaluate(&self, scores: ScoreTriple) -> Result<f64, SentimentFisError> {
        let c = scores.components();
        let values: Vec<f64> = self.slots.iter().map(|&s| c[s]).collect();
        let agg = self.rb.infer_values(&values)?;
        Ok(match self.defuzz {
            Defuzz::Exact => agg.centroid()?,
            Defuzz::Sampled { step } => agg.centroid_sampled(step)?,
        })
    }

    /// Refines `base` with every approach and evaluates each.
    pub fn evaluate_all(
        &self,
        base: ScoreTriple,
    ) -> Result<BTreeMap<ApproachId, f64>, SentimentFisError> {
        self.evaluate_approaches(base, &ApproachId::ALL)
    }

    pub fn evaluate_approaches(
        &self,
        base: ScoreTriple,
        approaches: &[ApproachId],
    ) -> Result<BTreeMap<ApproachId, f64>, SentimentFisError> {
        approaches
            .iter()
            .map(|&a| Ok((a, self.evaluate(refine(base, a)?)?)))
            .collect()
    }
}

/// One calibration target: `evaluate(refine(base, approach)) ≈ expected`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub base: ScoreTriple,
    pub approach: ApproachId,
    pub expected: f64,
}

/// Candidate values per input parameter, in [`InputParams::NAMES`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub values: [Vec<f64>; 7],
    pub defuzz: Defuzz,
}

impl GridSpec {
    /// Every parameter ranges over `lo, lo + step, ..., hi`.
    pub fn uniform(lo: f64, hi: f64, step: f64) -> Self {
        let axis = axis(lo, hi, step);
        Self {
            values: std::array::from_fn(|_| axis.clone()),
            defuzz: Defuzz::Exact,
        }
    }

    /// A grid holding exactly one point.
    pub fn single(p: InputParams) -> Self {
        Self {
            values: p.to_array().map(|x| vec![x]),
            defuzz: Defuzz::Exact,
        }
    }

    pub fn len(&self) -> usize {
        self.values.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn point(&self, mut index: usize) -> [f64; 7] {
        let mut p = [0.0; 7];
        for k in (0..7).rev() {
            let n = self.values[k].len();
            p[k] = self.values[k][index % n];
            index /= n;
        }
        p
    }
}

/// `lo, lo + step, ...` up to `hi`, rounded to 1e-9 to keep grid values tidy.
pub fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0 && lo <= hi) {
        return Vec::new();
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|i| ((lo + i as f64 * step) * 1e9).round() / 1e9)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnchorResidual {
    pub anchor: Anchor,
    pub output: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationReport {
    /// Fitted breakpoints; an estimate, since the originals are unpublished.
    pub params: InputParams,
    pub residuals: Vec<AnchorResidual>,
    pub sse: f64,
    pub max_abs_residual: f64,
    pub candidates: usize,
    pub admissible: usize,
}

/// Exhaustive grid search for the input breakpoints minimising the squared
/// error over `anchors`. Candidates violating the shape order or coverage are
/// skipped. Ties go to the lexicographically smallest parameter vector.
pub fn calibrate(
    anchors: &[Anchor],
    grid: &GridSpec,
    exec: Exec,
) -> Result<(SentimentFisConfig, CalibrationReport), SentimentFisError> {
    if anchors.is_empty() {
        return Err(SentimentFisError::NoAnchors);
    }
    if grid.is_empty() {
        return Err(SentimentFisError::EmptyGrid);
    }
    let inputs: Vec<(ApproachId, ScoreTriple)> = anchors
        .iter()
        .map(|a| Ok((a.approach, refine(a.base, a.approach)?)))
        .collect::<Result<_, DomainError>>()?;

    let candidate = |i: usize| -> Option<(f64, [f64; 7])> {
        let p = grid.point(i);
        if !InputParams::from_array(p).is_ordered() {
            return None;
        }
        let mut cfg = SentimentFisConfig::with_params(InputParams::from_array(p));
        cfg.defuzz = grid.defuzz;
        let fis = cfg.build().ok()?;
        let mut sse = 0.0;
        for (anchor, (_, x)) in anchors.iter().zip(&inputs) {
            let r = fis.evaluate(*x).ok()? - anchor.expected;
            sse += r * r;
        }
        Some((sse, p))
    };
    let order = |a: &(f64, [f64; 7]), b: &(f64, [f64; 7])| -> Ordering {
        a.0.total_cmp(&b.0).then_with(|| {
            a.1.iter()
                .zip(&b.1)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    };
    let admissible = exec
        .map_range(grid.len(), |i| admissible(grid.point(i)) as usize)
        .into_iter()
        .sum();
    let (sse, best) = exec
        .min_by_range(grid.len(), candidate, order)
        .ok_or(SentimentFisError::EmptyGrid)?;

    let mut cfg = SentimentFisConfig::with_params(InputParams::from_array(best));
    cfg.defuzz = grid.defuzz;
    let fis = cfg.build()?;
    let residuals = anchors
        .iter()
        .zip(&inputs)
        .map(|(a, (_, x))| {
            let output = fis.evaluate(*x)?;
            Ok(AnchorResidual {
                anchor: *a,
                output,
                residual: output - a.expected,
            })
        })
        .collect::<Result<Vec<_>, SentimentFisError>>()?;
    let max_abs_residual = residuals
        .iter()
        .map(|r| r.residual.abs())
        .fold(0.0, f64::max);
    Ok((
        cfg,
        CalibrationReport {
            params: InputParams::from_array(best),
            residuals,
            sse,
            max_abs_residual,
            candidates: grid.len(),
            admissible,
        },
    ))
}

fn admissible(p: [f64; 7]) -> bool {
    let p = InputParams::from_array(p);
    p.is_ordered() && p.variable("x").is_ok()
}

/// Anchors from the two reference reviews whose base triples are known,
/// all three approaches each. Same content as `data/anchors.csv`.
pub fn reference_anchors() -> Vec<Anchor> {
    let rows = [
        (
            ScoreTriple::new(0.000, 0.496, 0.504),
            [0.209549, 0.204982, 0.204982],
        ),
        (
            ScoreTriple::new(0.113, 0.073, 0.814),
            [0.500000, 0.586514, 0.599125],
        ),
    ];
    rows.iter()
        .flat_map(|&(base, expected)| {
            ApproachId::ALL
                .iter()
                .zip(expected)
                .map(move |(&approach, expected)| Anchor {
                    base,
                    approach,
                    expected,
                })
        })
        .collect()
}

/// Shipped anchor file (columns pos,neg,neu,approach,expected).
pub const ANCHORS_CSV: &str = include_str!("../data/anchors.csv");

#[derive(Deserialize)]
struct AnchorRow {
    pos: f64,
    neg: f64,
    neu: f64,
    approach: String,
    expected: f64,
}

/// Parses an anchor CSV with header `pos,neg,neu,approach,expected`.
/// An empty file is an error.
pub fn parse_anchors<R: std::io::Read>(reader: R) -> Result<Vec<Anchor>, SentimentFisError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for row in rdr.deserialize::<AnchorRow>() {
        let row = row.map_err(|e| SentimentFisError::AnchorFile {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = out.len() as u64 + 2;
        let approach =
            row.approach
                .parse::<ApproachId>()
                .map_err(|e| SentimentFisError::AnchorFile {
                    line,
                    message: e.to_string(),
                })?;
        let base = ScoreTriple::new(row.pos, row.neg, row.neu);
        if !base.in_unit_range() || !(0.0..=1.0).contains(&row.expected) {
            return Err(SentimentFisError::AnchorFile {
                line,
                message: "values must lie in [0, 1]".into(),
            });
        }
        out.push(Anchor {
            base,
            approach,
            expected: row.expected,
        });
    }
    if out.is_empty() {
        return Err(SentimentFisError::NoAnchors);
    }
    Ok(out)
}

pub fn load_anchors(path: impl AsRef<std::path::Path>) -> Result<Vec<Anchor>, SentimentFisError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| SentimentFisError::AnchorFile {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_anchors(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::validate_rulebase;
    use proptest::prelude::*;

    fn fis() -> SentimentFis {
        default_config().build().unwrap()
    }

    #[test]
    fn table_rules_match_examples() {
        let rules = table_rules();
        assert_eq!(rules.len(), 27);
        let r1 = &rules[0];
        assert_eq!(
            r1.antecedents,
            INPUT_NAMES
                .map(|n| (n.to_string(), "low".to_string()))
                .to_vec()
        );
        assert_eq!(r1.consequent.1, "neutral");
        assert_eq!(rules[18].consequent.1, "positive");
        assert_eq!(rules[13].consequent.1, "neutral");
    }

    #[test]
    fn default_and_symmetric_configs_validate() {
        for cfg in [default_config(), symmetric_config()] {
            let report = validate_rulebase(&cfg.rulebase().unwrap());
            assert!(report.passed(), "{:?}", report.violations);
            assert_eq!(
                cfg.output_terms[2],
                MembershipFunction::trapezoid(0.5, 0.7, 1.0, 1.0).unwrap()
            );
        }
    }

    #[test]
    fn saturated_and_neutral_points() {
        let f = fis();
        let pos = f.evaluate(ScoreTriple::new(0.9, 0.0, 0.1)).unwrap();
        assert!((pos - 0.795833).abs() < 1e-6);
        assert!((pos - SATURATED_POSITIVE).abs() < 1e-12);
        let neg = f.evaluate(ScoreTriple::new(0.0, 0.9, 0.1)).unwrap();
        assert!((neg - 0.204167).abs() < 1e-6);
        for out in f.evaluate_all(ScoreTriple::NEUTRAL).unwrap().values() {
            assert!((out - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn positive_leaning_base_moves_up() {
        // A positive-leaning worked example; no printed outputs exist for it,
        // so only the direction is checked.
        let out = fis()
            .evaluate_all(ScoreTriple::new(0.254, 0.102, 0.644))
            .unwrap();
        assert!(out.values().all(|&v| v >= 0.5 - 1e-9), "{out:?}");
        assert!(
            out[&ApproachId::A2] > 0.6 && out[&ApproachId::A3] > 0.6,
            "{out:?}"
        );
    }

    #[test]
    fn negative_base_ordering() {
        let out = fis()
            .evaluate_all(ScoreTriple::new(0.0, 0.496, 0.504))
            .unwrap();
        let (a1, a2, a3) = (
            out[&ApproachId::A1],
            out[&ApproachId::A2],
            out[&ApproachId::A3],
        );
        assert!(
            (a2 - a3).abs() < 0.02 && a2 <= a1 && a3 <= a1 && a1 < 0.4,
            "{out:?}"
        );
    }

    #[test]
    fn rejects_bad_params_and_inputs() {
        let mut p = InputParams::SYMMETRIC;
        p.l1 = 0.5;
        assert!(matches!(
            p.variable("x"),
            Err(SentimentFisError::InvalidParams(_))
        ));
        let gap = InputParams {
            l1: 0.1,
            l2: 0.2,
            m_lo: 0.4,
            m_peak: 0.5,
            m_hi: 0.6,
            h1: 0.8,
            h2: 0.9,
        };
        assert!(gap.variable("x").is_err());
        assert!(fis().evaluate(ScoreTriple::new(1.2, 0.0, 0.0)).is_err());
    }

    #[test]
    fn shipped_file_reproduces_default() {
        let shipped = include_str!("../data/sentiment_fis.toml");
        let file = FisFile::parse(shipped).unwrap();
        assert_eq!(file, default_config().to_fis_file().unwrap());
        let from_file = SentimentFis::from_fis_file(&file, Defuzz::Exact).unwrap();
        let t = ScoreTriple::new(0.336, 0.27, 0.814);
        assert_eq!(from_file.evaluate(t).unwrap(), fis().evaluate(t).unwrap());
    }

    #[test]
    fn input_order_in_file_does_not_matter() {
        let mut file = default_config().to_fis_file().unwrap();
        file.inputs.reverse();
        let shuffled = SentimentFis::from_fis_file(&file, Defuzz::Exact).unwrap();
        let t = ScoreTriple::new(0.3, 0.1, 0.6);
        assert_eq!(shuffled.evaluate(t).unwrap(), fis().evaluate(t).unwrap());
    }

    #[test]
    fn calibrate_single_anchor_ties_to_smallest() {
        let anchor = Anchor {
            base: ScoreTriple::new(0.9, 0.0, 0.1),
            approach: ApproachId::A1,
            expected: 0.795833,
        };
        let grid = GridSpec::uniform(0.1, 0.9, 0.1);
        let mut small = grid.clone();
        small.values = std::array::from_fn(|k| grid.values[k].iter().copied().step_by(2).collect());
        let (_, report) = calibrate(&[anchor], &small, Exec::default()).unwrap();
        assert!(report.max_abs_residual < 1e-6);
        // Smallest admissible vector with mu_low(0.1) = 1 and mu_high(0.9) = 1.
        let p = report.params;
        assert!(p.l1 >= 0.1 && p.h2 <= 0.9);
        let seq = calibrate(&[anchor], &small, Exec::Sequential).unwrap().1;
        assert_eq!(seq.params, report.params);
    }

    #[test]
    fn calibrate_errors() {
        let anchors = reference_anchors();
        let mut grid = GridSpec::single(InputParams::SYMMETRIC);
        grid.values[3].clear();
        assert!(matches!(
            calibrate(&anchors, &grid, Exec::Sequential),
            Err(SentimentFisError::EmptyGrid)
        ));
        let single = GridSpec::single(InputParams::SYMMETRIC);
        assert!(matches!(
            calibrate(&[], &single, Exec::Sequential),
            Err(SentimentFisError::NoAnchors)
        ));
        let (cfg, report) = calibrate(&anchors, &single, Exec::Sequential).unwrap();
        assert_eq!(cfg.input_params, InputParams::SYMMETRIC);
        assert_eq!(report.residuals.len(), 6);
    }

    #[test]
    fn sampled_mode_is_close_to_exact() {
        let mut cfg = default_config();
        cfg.defuzz = Defuzz::Sampled { step: 0.001 };
        let sampled = cfg.build().unwrap();
        let t = ScoreTriple::new(0.336, 0.27, 0.814);
        assert!((sampled.evaluate(t).unwrap() - fis().evaluate(t).unwrap()).abs() < 1e-3);
    }

    fn unit() -> impl Strategy<Value = f64> {
        0.0..=1.0f64
    }

    proptest! {
        #[test]
        fn mirror_symmetry(p in unit(), n in unit(), u in unit()) {
            let f = fis();
            let a = f.evaluate(ScoreTriple::new(p, n, u)).unwrap();
            let b = f.evaluate(ScoreTriple::new(n, p, u)).unwrap();
            prop_assert!((a + b - 1.0).abs() < 1e-9);
            prop_assert!((SATURATED_NEGATIVE - 1e-6..=SATURATED_POSITIVE + 1e-6).contains(&a));
        }

        #[test]
        fn equal_poles_are_neutral(x in unit(), u in unit()) {
            let out = fis().evaluate(ScoreTriple::new(x, x, u)).unwrap();
            prop_assert!((out - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn anchor_files() {
        assert_eq!(
            parse_anchors(ANCHORS_CSV.as_bytes()).unwrap(),
            reference_anchors()
        );
        assert!(matches!(
            parse_anchors("pos,neg,neu,approach,expected\n".as_bytes()),
            Err(SentimentFisError::NoAnchors)
        ));
        let bad = "pos,neg,neu,approach,expected\n0.1,0.2,0.7,A1,0.5\n0.1,0.2,0.7,A9,0.5\n";
        match parse_anchors(bad.as_bytes()) {
            Err(SentimentFisError::AnchorFile { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let bad = "pos,neg,neu,approach,expected\n0.1,x,0.7,A1,0.5\n";
        assert!(matches!(
            parse_anchors(bad.as_bytes()),
            Err(SentimentFisError::AnchorFile { line: 2, .. })
        ));
    }
}
