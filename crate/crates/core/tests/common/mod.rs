#![allow(dead_code)]

use std::collections::BTreeMap;

use sentfis::analysis::dominant_group;
use sentfis::corpus::{load_fixture, ScoredRecord, StarRating};
use sentfis::refine::{refine, ApproachId};
use sentfis::scorer::ScoreTriple;

pub const PROBE_TSV: &str = include_str!("../data/vader_probe_expected.tsv");
pub const PROBE_SENTENCES: &str = include_str!("../oracle/probe_sentences.txt");
pub const PORTER_TSV: &str = include_str!("../data/porter_classic_vocab.tsv");
pub const REFERENCE_TSV: &str = include_str!("../data/reference_scores.tsv");

pub struct ProbeRow {
    pub mode: String,
    pub index: usize,
    pub triple: ScoreTriple,
    pub compound: f64,
    pub cleaned: String,
}

pub fn probe_rows() -> Vec<ProbeRow> {
    PROBE_TSV
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let num = |i: usize| f[i].parse::<f64>().unwrap();
            ProbeRow {
                mode: f[0].to_string(),
                index: f[1].parse().unwrap(),
                triple: ScoreTriple::new(num(2), num(3), num(4)),
                compound: num(5),
                cleaned: f.get(6).unwrap_or(&"").to_string(),
            }
        })
        .collect()
}

pub fn probe_sentences() -> Vec<&'static str> {
    PROBE_SENTENCES.lines().collect()
}

/// Printed per-row outputs `(row, [A1, A2, A3], stars)` of the 30 reference reviews.
pub fn reference_rows() -> Vec<(usize, [f64; 3], StarRating)> {
    REFERENCE_TSV
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let stars = match f[4] {
                "NAN" => StarRating::Missing,
                s => StarRating::Stars(s.parse().unwrap()),
            };
            let y = [1, 2, 3].map(|i| f[i].parse::<f64>().unwrap());
            (f[0].parse().unwrap(), y, stars)
        })
        .collect()
}

/// The 30 fixture reviews carrying the printed outputs as their FIS scores.
pub fn reference_scored() -> Vec<ScoredRecord> {
    let fixture = load_fixture();
    reference_rows()
        .into_iter()
        .map(|(row, y, stars)| {
            let record = fixture[row - 1].clone();
            assert_eq!(record.stars, stars, "row {row}");
            let fis_output: BTreeMap<ApproachId, f64> =
                ApproachId::ALL.into_iter().zip(y).collect();
            ScoredRecord {
                record,
                base_scores: ScoreTriple::NEUTRAL,
                refined: ApproachId::ALL
                    .into_iter()
                    .map(|a| (a, refine(ScoreTriple::NEUTRAL, a).unwrap()))
                    .collect(),
                group: fis_output
                    .iter()
                    .map(|(a, v)| (*a, dominant_group(*v).unwrap()))
                    .collect(),
                fis_output,
            }
        })
        .collect()
}

/// Independent classifier: 0 negative, 1 neutral, 2 positive.
pub fn brute_group(y: f64) -> usize {
    if y < 0.4 {
        0
    } else if y < 0.6 {
        1
    } else {
        2
    }
}
