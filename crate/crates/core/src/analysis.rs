//! Dominant-group classification, star cross-tabs, missing-star
//! distributions, approach transition matrices and the word-count/star
//! correlation, plus the report and figure tables built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{ScoredRecord, StarRating};
use crate::preprocess::word_count;
use crate::refine::ApproachId;

/// Version of the report JSON layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const NEGATIVE_BELOW: f64 = 0.4;
pub const POSITIVE_FROM: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentGroup {
    Negative,
    Neutral,
    Positive,
}

impl SentimentGroup {
    pub const ALL: [SentimentGroup; 3] = [
        SentimentGroup::Negative,
        SentimentGroup::Neutral,
        SentimentGroup::Positive,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SentimentGroup::Negative => "negative",
            SentimentGroup::Neutral => "neutral",
            SentimentGroup::Positive => "positive",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for SentimentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("FIS score {0} is outside [0, 1]")]
    Domain(f64),
    #[error("record {id} has no output for approach {approach}")]
    MissingApproach { id: String, approach: ApproachId },
    #[error("no approaches requested")]
    NoApproaches,
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
}

/// `[0, 0.4)` negative, `[0.4, 0.6)` neutral, `[0.6, 1]` positive.
pub fn dominant_group(fis_score: f64) -> Result<SentimentGroup, AnalysisError> {
    if !(0.0..=1.0).contains(&fis_score) {
        return Err(AnalysisError::Domain(fis_score));
    }
    Ok(if fis_score < NEGATIVE_BELOW {
        SentimentGroup::Negative
    } else if fis_score < POSITIVE_FROM {
        SentimentGroup::Neutral
    } else {
        SentimentGroup::Positive
    })
}

fn group_of(r: &ScoredRecord, approach: ApproachId) -> Result<SentimentGroup, AnalysisError> {
    let missing = || AnalysisError::MissingApproach {
        id: r.record.id.clone(),
        approach,
    };
    match r.group.get(&approach) {
        Some(g) => Ok(*g),
        None => dominant_group(*r.fis_output.get(&approach).ok_or_else(missing)?),
    }
}

fn zero_groups() -> BTreeMap<SentimentGroup, usize> {
    SentimentGroup::ALL.iter().map(|g| (*g, 0)).collect()
}

/// Group sizes and star counts per group for one approach.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crosstab {
    pub group_counts: BTreeMap<SentimentGroup, usize>,
    /// Star keys are `"1"`..`"5"` and `"missing"`.
    pub star_crosstab: BTreeMap<SentimentGroup, BTreeMap<String, usize>>,
}

pub fn group_star_crosstab(
    records: &[ScoredRecord],
    approach: ApproachId,
) -> Result<Crosstab, AnalysisError> {
    let mut group_counts = zero_groups();
    let mut star_crosstab: BTreeMap<SentimentGroup, BTreeMap<String, usize>> = SentimentGroup::ALL
        .iter()
        .map(|g| (*g, StarRating::all().map(|s| (s.key(), 0)).collect()))
        .collect();
    for r in records {
        let g = group_of(r, approach)?;
        *group_counts.get_mut(&g).unwrap() += 1;
        *star_crosstab
            .get_mut(&g)
            .unwrap()
            .get_mut(&r.record.stars.key())
            .unwrap() += 1;
    }
    Ok(Crosstab {
        group_counts,
        star_crosstab,
    })
}

/// Group counts over records whose star rating is missing.
pub fn missing_star_distribution(
    records: &[ScoredRecord],
    approach: ApproachId,
) -> Result<BTreeMap<SentimentGroup, usize>, AnalysisError> {
    let mut counts = zero_groups();
    for r in records.iter().filter(|r| r.record.stars.is_missing()) {
        *counts.get_mut(&group_of(r, approach)?).unwrap() += 1;
    }
    Ok(counts)
}

/// `counts[i][j]`: records in group `i` under `from` and group `j` under `to`,
/// groups ordered negative, neutral, positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    pub from: ApproachId,
    pub to: ApproachId,
    pub counts: [[usize; 3]; 3],
}

impl TransitionMatrix {
    pub fn get(&self, from: SentimentGroup, to: SentimentGroup) -> usize {
        self.counts[from.index()][to.index()]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn row_sums(&self) -> [usize; 3] {
        self.counts.map(|r| r.iter().sum())
    }

    pub fn column_sums(&self) -> [usize; 3] {
        std::array::from_fn(|j| self.counts.iter().map(|r| r[j]).sum())
    }
}

pub fn transition_matrix(
    records: &[ScoredRecord],
    from: ApproachId,
    to: ApproachId,
) -> Result<TransitionMatrix, AnalysisError> {
    let mut counts = [[0usize; 3]; 3];
    for r in records {
        counts[group_of(r, from)?.index()][group_of(r, to)?.index()] += 1;
    }
    Ok(TransitionMatrix { from, to, counts })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Correlation {
    Defined {
        pearson_r: f64,
        n: usize,
    },
    /// Fewer than two pairs.
    InsufficientData {
        n: usize,
    },
    /// One of the variables has zero variance.
    Undefined {
        n: usize,
    },
}

impl Correlation {
    pub fn r(&self) -> Option<f64> {
        match self {
            Correlation::Defined { pearson_r, .. } => Some(*pearson_r),
            _ => None,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Correlation::Defined { n, .. }
            | Correlation::InsufficientData { n }
            | Correlation::Undefined { n } => *n,
        }
    }
}

/// Pearson coefficient of paired samples.
pub fn pearson(pairs: &[(f64, f64)]) -> Correlation {
    let n = pairs.len();
    if n < 2 {
        return Correlation::InsufficientData { n };
    }
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Correlation::Undefined { n };
    }
    Correlation::Defined {
        pearson_r: (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0),
        n,
    }
}

/// `(raw english word count, stars)` for records with a rating.
pub fn wordcount_star_pairs(records: &[ScoredRecord]) -> Vec<(usize, u8)> {
    records
        .iter()
        .filter_map(|r| {
            r.record
                .stars
                .value()
                .map(|s| (word_count(&r.record.english_text), s))
        })
        .collect()
}

pub fn star_wordcount_correlation(records: &[ScoredRecord]) -> Correlation {
    let pairs: Vec<(f64, f64)> = wordcount_star_pairs(records)
        .into_iter()
        .map(|(w, s)| (w as f64, s as f64))
        .collect();
    pearson(&pairs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproachSummary {
    pub group_counts: BTreeMap<SentimentGroup, usize>,
    pub star_crosstab: BTreeMap<SentimentGroup, BTreeMap<String, usize>>,
    pub missing_star_counts: BTreeMap<SentimentGroup, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub corpus_size: usize,
    pub per_approach: BTreeMap<ApproachId, ApproachSummary>,
    /// Keyed `"<from>_<to>"` for every ordered pair of requested approaches
    /// with `from < to`.
    pub transitions: BTreeMap<String, TransitionMatrix>,
    pub correlation: Correlation,
}

pub fn build_report(
    records: &[ScoredRecord],
    approaches: &[ApproachId],
) -> Result<AnalysisReport, AnalysisError> {
    if approaches.is_empty() {
        return Err(AnalysisError::NoApproaches);
    }
    let mut approaches = approaches.to_vec();
    approaches.sort();
    approaches.dedup();
    let mut per_approach = BTreeMap::new();
    for &a in &approaches {
        let Crosstab {
            group_counts,
            star_crosstab,
        } = group_star_crosstab(records, a)?;
        per_approach.insert(
            a,
            ApproachSummary {
                group_counts,
                star_crosstab,
                missing_star_counts: missing_star_distribution(records, a)?,
            },
        );
    }
    let mut transitions = BTreeMap::new();
    for (i, &from) in approaches.iter().enumerate() {
        for &to in &approaches[i + 1..] {
            transitions.insert(
                format!("{from}_{to}"),
                transition_matrix(records, from, to)?,
            );
        }
    }
    Ok(AnalysisReport {
        schema_version: REPORT_SCHEMA_VERSION,
        corpus_size: records.len(),
        per_approach,
        transitions,
        correlation: star_wordcount_correlation(records),
    })
}

/// Writes the figure tables into `dir`: `figure4_<A>.csv` (group,star,count),
/// `figure5_<A>.csv` (group,count over missing stars),
/// `figure6_<from>_<to>.csv` (3×3 with group labels) and `figure7.csv`
/// (word_count,star). Returns the file names written, sorted.
pub fn write_figures(
    report: &AnalysisReport,
    records: &[ScoredRecord],
    dir: &Path,
) -> Result<Vec<String>, AnalysisError> {
    let mut files: BTreeMap<String, String> = BTreeMap::new();
    for (a, s) in &report.per_approach {
        let mut t = String::from("group,star,count\n");
        for (g, stars) in &s.star_crosstab {
            for star in StarRating::all() {
                t.push_str(&format!("{g},{},{}\n", star.key(), stars[&star.key()]));
            }
        }
        files.insert(format!("figure4_{a}.csv"), t);
        let mut t = String::from("group,count\n");
        for (g, c) in &s.missing_star_counts {
            t.push_str(&format!("{g},{c}\n"));
        }
        files.insert(format!("figure5_{a}.csv"), t);
    }
    for (key, m) in &report.transitions {
        let mut t = format!("{}\\{}", m.from, m.to);
        for g in SentimentGroup::ALL {
            t.push_str(&format!(",{g}"));
        }
        t.push('\n');
        for g in SentimentGroup::ALL {
            t.push_str(g.as_str());
            for c in m.counts[g.index()] {
                t.push_str(&format!(",{c}"));
            }
            t.push('\n');
        }
        files.insert(format!("figure6_{key}.csv"), t);
    }
    let mut t = String::from("word_count,star\n");
    for (w, s) in wordcount_star_pairs(records) {
        t.push_str(&format!("{w},{s}\n"));
    }
    files.insert("figure7.csv".to_string(), t);

    let fail = |p: &Path, e: std::io::Error| AnalysisError::Write {
        path: p.display().to_string(),
        message: e.to_string(),
    };
    fs::create_dir_all(dir).map_err(|e| fail(dir, e))?;
    for (name, body) in &files {
        let p = dir.join(name);
        fs::write(&p, body).map_err(|e| fail(&p, e))?;
    }
    Ok(files.into_keys().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ReviewRecord;
    use crate::scorer::ScoreTriple;
    use proptest::prelude::*;

    fn rec(id: &str, stars: StarRating, outs: &[(ApproachId, f64)]) -> ScoredRecord {
        ScoredRecord {
            record: ReviewRecord::new(id, "a b c", stars),
            base_scores: ScoreTriple::NEUTRAL,
            refined: outs
                .iter()
                .map(|(a, _)| (*a, ScoreTriple::NEUTRAL))
                .collect(),
            fis_output: outs.iter().copied().collect(),
            group: outs
                .iter()
                .map(|(a, s)| (*a, dominant_group(*s).unwrap()))
                .collect(),
        }
    }

    #[test]
    fn group_boundaries() {
        use SentimentGroup::*;
        assert_eq!(dominant_group(0.209549), Ok(Negative));
        assert_eq!(dominant_group(0.5), Ok(Neutral));
        assert_eq!(dominant_group(0.4), Ok(Neutral));
        assert_eq!(dominant_group(0.6), Ok(Positive));
        assert_eq!(dominant_group(1.0), Ok(Positive));
        assert_eq!(dominant_group(0.0), Ok(Negative));
        assert!(dominant_group(1.01).is_err());
        assert!(dominant_group(f64::NAN).is_err());
    }

    #[test]
    fn empty_corpus() {
        let ct = group_star_crosstab(&[], ApproachId::A1).unwrap();
        assert!(ct.group_counts.values().all(|c| *c == 0));
        let report = build_report(&[], &[ApproachId::A1]).unwrap();
        assert_eq!(report.correlation, Correlation::InsufficientData { n: 0 });
        assert!(missing_star_distribution(&[], ApproachId::A2)
            .unwrap()
            .values()
            .all(|c| *c == 0));
    }

    #[test]
    fn missing_approach_is_an_error() {
        let r = rec("x", StarRating::Missing, &[(ApproachId::A1, 0.5)]);
        assert_eq!(
            group_star_crosstab(std::slice::from_ref(&r), ApproachId::A2),
            Err(AnalysisError::MissingApproach {
                id: "x".into(),
                approach: ApproachId::A2
            })
        );
        assert!(transition_matrix(&[r], ApproachId::A1, ApproachId::A3).is_err());
    }

    #[test]
    fn pearson_cases() {
        let r = pearson(&[(10.0, 2.0), (20.0, 4.0), (30.0, 5.0)])
            .r()
            .unwrap();
        assert!(r > 0.9);
        assert!(matches!(
            pearson(&[(1.0, 3.0), (2.0, 3.0)]),
            Correlation::Undefined { n: 2 }
        ));
        assert!(matches!(
            pearson(&[(1.0, 3.0)]),
            Correlation::InsufficientData { n: 1 }
        ));
    }

    #[test]
    fn figures_are_written() {
        let recs = vec![
            rec(
                "a",
                StarRating::Stars(2),
                &[(ApproachId::A1, 0.2), (ApproachId::A2, 0.1)],
            ),
            rec(
                "b",
                StarRating::Missing,
                &[(ApproachId::A1, 0.5), (ApproachId::A2, 0.7)],
            ),
        ];
        let report = build_report(&recs, &[ApproachId::A2, ApproachId::A1]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let names = write_figures(&report, &recs, dir.path()).unwrap();
        assert_eq!(
            names,
            [
                "figure4_A1.csv",
                "figure4_A2.csv",
                "figure5_A1.csv",
                "figure5_A2.csv",
                "figure6_A1_A2.csv",
                "figure7.csv"
            ]
        );
        let f6 = fs::read_to_string(dir.path().join("figure6_A1_A2.csv")).unwrap();
        assert_eq!(
            f6,
            "A1\\A2,negative,neutral,positive\nnegative,1,0,0\nneutral,0,0,1\npositive,0,0,0\n"
        );
        let f7 = fs::read_to_string(dir.path().join("figure7.csv")).unwrap();
        assert_eq!(f7, "word_count,star\n3,2\n");
    }

    fn corpus() -> impl Strategy<Value = Vec<ScoredRecord>> {
        prop::collection::vec(
            (
                prop::option::of(1u8..=5),
                prop::array::uniform3(0.0..=1.0f64),
            ),
            0..40,
        )
        .prop_map(|rows| {
            rows.into_iter()
                .enumerate()
                .map(|(i, (s, o))| {
                    let stars = s.map_or(StarRating::Missing, StarRating::Stars);
                    let outs: Vec<_> = ApproachId::ALL.into_iter().zip(o).collect();
                    rec(&format!("r{i}"), stars, &outs)
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn report_invariants(records in corpus()) {
            let report = build_report(&records, &ApproachId::ALL).unwrap();
            for (a, s) in &report.per_approach {
                prop_assert_eq!(s.group_counts.values().sum::<usize>(), records.len());
                for (g, stars) in &s.star_crosstab {
                    prop_assert_eq!(stars.values().sum::<usize>(), s.group_counts[g]);
                }
                prop_assert_eq!(
                    s.missing_star_counts.values().sum::<usize>(),
                    records.iter().filter(|r| r.record.stars.is_missing()).count()
                );
                let diag = transition_matrix(&records, *a, *a).unwrap();
                for g in SentimentGroup::ALL {
                    prop_assert_eq!(diag.get(g, g), s.group_counts[&g]);
                }
            }
            for m in report.transitions.values() {
                prop_assert_eq!(m.total(), records.len());
                let from = &report.per_approach[&m.from].group_counts;
                let to = &report.per_approach[&m.to].group_counts;
                prop_assert_eq!(m.row_sums().to_vec(), from.values().copied().collect::<Vec<_>>());
                prop_assert_eq!(m.column_sums().to_vec(), to.values().copied().collect::<Vec<_>>());
            }
            let json = crate::json::to_string(&report).unwrap();
            let back: AnalysisReport = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, report);
        }

        #[test]
        fn grouping_is_monotone(a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(dominant_group(lo).unwrap() <= dominant_group(hi).unwrap());
        }

        #[test]
        fn pearson_is_bounded_and_affine_invariant(
            pairs in prop::collection::vec((0.0..100.0f64, 1.0..5.0f64), 2..30),
            scale in 0.1..10.0f64,
            shift in -5.0..5.0f64,
        ) {
            if let Some(r) = pearson(&pairs).r() {
                prop_assert!((-1.0..=1.0).contains(&r));
                let moved: Vec<_> = pairs.iter().map(|&(x, y)| (scale * x + shift, y)).collect();
                let r2 = pearson(&moved).r().unwrap();
                prop_assert!((r - r2).abs() < 1e-9);
            }
        }
    }
}
