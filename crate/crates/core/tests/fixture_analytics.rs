mod common;

use common::{brute_group, reference_rows, reference_scored};
use sentfis::analysis::{
    build_report, dominant_group, missing_star_distribution, pearson, transition_matrix,
    write_figures, Correlation, SentimentGroup,
};
use sentfis::corpus::load_fixture;
use sentfis::pipeline::{Pipeline, ScoreOn};
use sentfis::preprocess::word_count;
use sentfis::refine::ApproachId;
use SentimentGroup::*;

#[test]
fn approach_one_tally() {
    let report = build_report(&reference_scored(), &ApproachId::ALL).unwrap();
    let counts: Vec<usize> = report.per_approach[&ApproachId::A1]
        .group_counts
        .values()
        .copied()
        .collect();
    assert_eq!(counts, [3, 20, 7]);
    for s in report.per_approach.values() {
        assert_eq!(s.group_counts.values().sum::<usize>(), 30);
        let missing: usize = s.star_crosstab.values().map(|m| m["missing"]).sum();
        assert_eq!(missing, 6);
    }
}

#[test]
fn missing_star_distribution_matches_row_tally() {
    let scored = reference_scored();
    let a1 = missing_star_distribution(&scored, ApproachId::A1).unwrap();
    assert_eq!(a1.values().copied().collect::<Vec<_>>(), [1, 5, 0]);
    let a3 = missing_star_distribution(&scored, ApproachId::A3).unwrap();
    let full_a1 = build_report(&scored, &[ApproachId::A1]).unwrap();
    let full_a3 = build_report(&scored, &[ApproachId::A3]).unwrap();
    assert!(
        full_a3.per_approach[&ApproachId::A3].group_counts[&Negative]
            > full_a1.per_approach[&ApproachId::A1].group_counts[&Negative]
    );
    for (i, a) in ApproachId::ALL.iter().enumerate() {
        let mut want = [0usize; 3];
        for (_, y, stars) in reference_rows() {
            if stars.is_missing() {
                want[brute_group(y[i])] += 1;
            }
        }
        let got = missing_star_distribution(&scored, *a).unwrap();
        assert_eq!(got.values().copied().collect::<Vec<_>>(), want, "{a}");
    }
    assert_eq!(a3[&Negative], 4);
}

#[test]
fn transitions_match_row_tally() {
    let scored = reference_scored();
    for to in [1, 2] {
        let mut want = [[0usize; 3]; 3];
        for (_, y, _) in reference_rows() {
            want[brute_group(y[0])][brute_group(y[to])] += 1;
        }
        let m = transition_matrix(&scored, ApproachId::A1, ApproachId::ALL[to]).unwrap();
        assert_eq!(m.counts, want);
    }
    let a13 = transition_matrix(&scored, ApproachId::A1, ApproachId::A3).unwrap();
    assert!(a13.get(Neutral, Negative) >= 2);
    let a12 = transition_matrix(&scored, ApproachId::A1, ApproachId::A2).unwrap();
    assert_eq!(a12.get(Positive, Negative), 0);
    assert_eq!(a12.get(Negative, Positive), 0);
}

#[test]
fn correlation_over_starred_rows() {
    let scored = reference_scored();
    let report = build_report(&scored, &ApproachId::ALL).unwrap();
    // Brute-force Pearson from the raw sums.
    let pairs: Vec<(f64, f64)> = scored
        .iter()
        .filter_map(|r| {
            r.record
                .stars
                .value()
                .map(|s| (word_count(&r.record.english_text) as f64, s as f64))
        })
        .collect();
    let n = pairs.len() as f64;
    let (sx, sy) = pairs.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (sxx, syy, sxy) = pairs.iter().fold((0.0, 0.0, 0.0), |a, p| {
        (a.0 + p.0 * p.0, a.1 + p.1 * p.1, a.2 + p.0 * p.1)
    });
    let r = (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt());
    match report.correlation {
        Correlation::Defined { pearson_r, n } => {
            assert_eq!(n, 24);
            assert!((pearson_r - r).abs() < 1e-12, "{pearson_r} vs {r}");
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(pearson(&pairs).r(), report.correlation.r());
}

#[test]
fn printed_scores_classify_as_tallied() {
    for (row, y, _) in reference_rows() {
        for v in y {
            assert_eq!(
                dominant_group(v).unwrap().index(),
                brute_group(v),
                "row {row}"
            );
        }
    }
}

#[test]
fn end_to_end_fixture_run() {
    let fixture = load_fixture();
    let mut p = Pipeline::with_defaults();
    p.score_on = ScoreOn::Clean;
    let scored = p.run(&fixture[..30]).unwrap();
    let report = build_report(&scored, &ApproachId::ALL).unwrap();
    for s in report.per_approach.values() {
        assert_eq!(s.group_counts.values().sum::<usize>(), 30);
    }
    let dir = tempfile::tempdir().unwrap();
    let files = write_figures(&report, &scored, dir.path()).unwrap();
    assert_eq!(files.len(), 3 + 3 + 3 + 1);
    let f4 = std::fs::read_to_string(dir.path().join("figure4_A1.csv")).unwrap();
    assert_eq!(f4.lines().count(), 1 + 3 * 6);
}
