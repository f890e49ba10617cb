//! Review records, CSV ingestion, JSONL emission and the embedded fixture.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::analysis::SentimentGroup;
use crate::json;
use crate::refine::ApproachId;
use crate::scorer::ScoreTriple;

const FIXTURE_CSV: &str = include_str!("../data/fixture.csv");

/// A 1–5 star rating or the absence of one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarRating {
    Stars(u8),
    Missing,
}

impl StarRating {
    pub const RANGE: std::ops::RangeInclusive<u8> = 1..=5;

    pub fn new(value: u8) -> Option<Self> {
        Self::RANGE
            .contains(&value)
            .then_some(StarRating::Stars(value))
    }

    pub fn value(self) -> Option<u8> {
        match self {
            StarRating::Stars(v) => Some(v),
            StarRating::Missing => None,
        }
    }

    pub fn is_missing(self) -> bool {
        self == StarRating::Missing
    }

    /// Key used in reports: `"1"`..`"5"` or `"missing"`.
    pub fn key(self) -> String {
        match self {
            StarRating::Stars(v) => v.to_string(),
            StarRating::Missing => "missing".to_string(),
        }
    }

    /// All present values followed by `Missing`.
    pub fn all() -> impl Iterator<Item = StarRating> {
        Self::RANGE
            .map(StarRating::Stars)
            .chain([StarRating::Missing])
    }
}

impl fmt::Display for StarRating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl Serialize for StarRating {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for StarRating {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Option::<u8>::deserialize(d)? {
            None => Ok(StarRating::Missing),
            Some(v) => StarRating::new(v)
                .ok_or_else(|| serde::de::Error::custom(format!("star rating {v} outside 1..5"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewRecord {
    pub id: String,
    pub persian_text: Option<String>,
    pub english_text: String,
    pub clean_text: Option<String>,
    pub items_purchased: Option<u32>,
    pub stars: StarRating,
}

impl ReviewRecord {
    pub fn new(id: impl Into<String>, english_text: impl Into<String>, stars: StarRating) -> Self {
        Self {
            id: id.into(),
            persian_text: None,
            english_text: english_text.into(),
            clean_text: None,
            items_purchased: None,
            stars,
        }
    }
}

/// A record with its scores under each evaluated approach.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredRecord {
    pub record: ReviewRecord,
    pub base_scores: ScoreTriple,
    pub refined: BTreeMap<ApproachId, ScoreTriple>,
    pub fis_output: BTreeMap<ApproachId, f64>,
    pub group: BTreeMap<ApproachId, SentimentGroup>,
}

impl ScoredRecord {
    /// Every refined approach also has an output and a group.
    pub fn is_consistent(&self) -> bool {
        self.refined
            .keys()
            .all(|a| self.fis_output.contains_key(a) && self.group.contains_key(a))
    }
}

/// Header names of the input columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvSchema {
    /// Without an id column records are named `row-<line>`.
    pub id: Option<String>,
    pub persian_text: Option<String>,
    pub english_text: String,
    pub items_purchased: Option<String>,
    pub stars: Option<String>,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            id: Some("id".into()),
            persian_text: Some("persian_text".into()),
            english_text: "english_text".into(),
            items_purchased: Some("items_purchased".into()),
            stars: Some("stars".into()),
        }
    }
}

/// Row numbers are 1-based file line numbers; the header is line 1.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    FileUnreadable {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("missing column {0:?}")]
    MissingColumn(String),
    #[error("malformed CSV: {0}")]
    Malformed(String),
    #[error("row {0}: empty english text")]
    EmptyText(u64),
    #[error("row {row}: bad star rating {value:?} (expected an integer 1-5 or empty)")]
    BadStar { row: u64, value: String },
    #[error("row {row}: bad item count {value:?}")]
    BadItems { row: u64, value: String },
    #[error("row {row}: duplicate id {id:?}")]
    DuplicateId { row: u64, id: String },
    #[error("cannot write {path}: {source}")]
    WriteFailure {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} line {line}: {message}")]
    BadJson {
        path: String,
        line: usize,
        message: String,
    },
}

/// Accepted records and row-level rejections, in file order.
#[derive(Debug, Default)]
pub struct Ingested {
    pub records: Vec<ReviewRecord>,
    pub rejected: Vec<CorpusError>,
}

impl Ingested {
    /// The records, or the first rejection.
    pub fn into_strict(self) -> Result<Vec<ReviewRecord>, CorpusError> {
        match self.rejected.into_iter().next() {
            Some(e) => Err(e),
            None => Ok(self.records),
        }
    }
}

pub fn ingest_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<Ingested, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| CorpusError::FileUnreadable {
        path: path.display().to_string(),
        source,
    })?;
    ingest_reader(file, schema)
}

pub fn ingest_reader<R: Read>(reader: R, schema: &CsvSchema) -> Result<Ingested, CorpusError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| CorpusError::Malformed(e.to_string()))?
        .clone();
    let find = |name: &str| headers.iter().position(|h| h.trim() == name);
    let required =
        |name: &str| find(name).ok_or_else(|| CorpusError::MissingColumn(name.to_string()));
    let optional = |name: &Option<String>| -> Result<Option<usize>, CorpusError> {
        name.as_deref().map(required).transpose()
    };
    let text_col = required(&schema.english_text)?;
    let id_col = optional(&schema.id)?;
    let fa_col = optional(&schema.persian_text)?;
    let items_col = optional(&schema.items_purchased)?;
    let stars_col = optional(&schema.stars)?;

    let mut out = Ingested::default();
    let mut seen = HashSet::new();
    for row in rdr.records() {
        let row = row.map_err(|e| CorpusError::Malformed(e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        let cell = |c: Option<usize>| c.and_then(|c| row.get(c)).map(str::trim).unwrap_or("");
        match parse_row(line, &cell, text_col, id_col, fa_col, items_col, stars_col) {
            Ok(rec) => {
                if seen.insert(rec.id.clone()) {
                    out.records.push(rec);
                } else {
                    out.rejected.push(CorpusError::DuplicateId {
                        row: line,
                        id: rec.id,
                    });
                }
            }
            Err(e) => out.rejected.push(e),
        }
    }
    Ok(out)
}

fn parse_row<'a>(
    line: u64,
    cell: &dyn Fn(Option<usize>) -> &'a str,
    text_col: usize,
    id_col: Option<usize>,
    fa_col: Option<usize>,
    items_col: Option<usize>,
    stars_col: Option<usize>,
) -> Result<ReviewRecord, CorpusError> {
    let english_text = cell(Some(text_col));
    if english_text.is_empty() {
        return Err(CorpusError::EmptyText(line));
    }
    let stars = match cell(stars_col) {
        "" => StarRating::Missing,
        s => s
            .parse::<u8>()
            .ok()
            .and_then(StarRating::new)
            .ok_or_else(|| CorpusError::BadStar {
                row: line,
                value: s.to_string(),
            })?,
    };
    let items_purchased = match cell(items_col) {
        "" => None,
        s => Some(s.parse::<u32>().map_err(|_| CorpusError::BadItems {
            row: line,
            value: s.to_string(),
        })?),
    };
    let id = match cell(id_col) {
        "" => format!("row-{line}"),
        s => s.to_string(),
    };
    let persian = cell(fa_col);
    Ok(ReviewRecord {
        id,
        persian_text: (!persian.is_empty()).then(|| persian.to_string()),
        english_text: english_text.to_string(),
        clean_text: None,
        items_purchased,
        stars,
    })
}

/// The 30 reference reviews followed by the two worked examples that are
/// not already among them.
pub fn load_fixture() -> Vec<ReviewRecord> {
    ingest_reader(FIXTURE_CSV.as_bytes(), &CsvSchema::default())
        .and_then(Ingested::into_strict)
        .expect("embedded fixture is well formed")
}

/// The embedded fixture as CSV text.
pub fn fixture_csv() -> &'static str {
    FIXTURE_CSV
}

/// One JSON object per line.
pub fn emit_jsonl<T: Serialize>(records: &[T], path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let fail = |source| CorpusError::WriteFailure {
        path: path.display().to_string(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(fail)?);
    write_jsonl(records, &mut w).map_err(fail)?;
    w.flush().map_err(fail)
}

pub fn write_jsonl<T: Serialize, W: Write>(records: &[T], w: &mut W) -> std::io::Result<()> {
    for r in records {
        let line = json::to_string(r).map_err(std::io::Error::other)?;
        w.write_all(line.as_bytes())?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Flat per-record table: `id,stars,pos,neg,neu` then `<A>_fis,<A>_group`
/// for each approach in `approaches`. Missing stars are an empty cell.
pub fn write_records_csv<W: Write>(
    records: &[ScoredRecord],
    approaches: &[ApproachId],
    w: W,
) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec![
        "id".to_string(),
        "stars".into(),
        "pos".into(),
        "neg".into(),
        "neu".into(),
    ];
    for a in approaches {
        header.push(format!("{a}_fis"));
        header.push(format!("{a}_group"));
    }
    out.write_record(&header)?;
    for r in records {
        let b = r.base_scores;
        let mut row = vec![
            r.record.id.clone(),
            r.record
                .stars
                .value()
                .map(|s| s.to_string())
                .unwrap_or_default(),
            json::format_f64(b.positive),
            json::format_f64(b.negative),
            json::format_f64(b.neutral),
        ];
        for a in approaches {
            row.push(
                r.fis_output
                    .get(a)
                    .map(|y| json::format_f64(*y))
                    .unwrap_or_default(),
            );
            row.push(r.group.get(a).map(|g| g.to_string()).unwrap_or_default());
        }
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_jsonl<T: for<'de> Deserialize<'de>>(
    path: impl AsRef<Path>,
) -> Result<Vec<T>, CorpusError> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let file = File::open(path).map_err(|source| CorpusError::FileUnreadable {
        path: name.clone(),
        source,
    })?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| CorpusError::FileUnreadable {
            path: name.clone(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|e| CorpusError::BadJson {
                path: name.clone(),
                line: i + 1,
                message: e.to_string(),
            })?,
        );
    }
    Ok(out)
}
