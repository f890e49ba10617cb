use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use sentfis::analysis::{build_report, write_figures};
use sentfis::corpus::{
    emit_jsonl, fixture_csv, ingest_csv, load_fixture, write_records_csv, CsvSchema, ReviewRecord,
};
use sentfis::exec::Exec;
use sentfis::fuzzy::{validate_rulebase, FisFile};
use sentfis::json;
use sentfis::pipeline::{Pipeline, ScoreOn};
use sentfis::preprocess::{clean_text, load_stopwords, CleanConfig};
use sentfis::refine::{refine, ApproachId};
use sentfis::scorer::{self, score, ScoreTriple, SentimentLexicon};
use sentfis::sentiment_fis::{
    axis, calibrate, default_config, load_anchors, parse_anchors, Defuzz, GridSpec, InputParams,
    SentimentFis, SentimentFisConfig, ANCHORS_CSV,
};

#[derive(Parser)]
#[command(
    name = "sentfis",
    version,
    about = "Fuzzy-inference sentiment scoring for review corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a corpus end to end and write the analysis report.
    Run(RunArgs),
    /// Score one text and print its triple.
    Score(ScoreArgs),
    /// Check a FIS config for completeness, consistency and continuity.
    ValidateRules(ValidateArgs),
    /// Fit input breakpoints to anchor outputs by grid search.
    Calibrate(CalibrateArgs),
    /// Print the embedded fixture corpus as CSV.
    Fixture(FixtureArgs),
}

#[derive(Args)]
struct TextArgs {
    /// Lexicon file (token<TAB>valence...); defaults to the embedded one.
    #[arg(long, env = "SENTFIS_LEXICON")]
    lexicon: Option<PathBuf>,
    /// Stopword list, one per line; defaults to the embedded English list.
    #[arg(long, env = "SENTFIS_STOPWORDS")]
    stopwords: Option<PathBuf>,
    /// Text the scorer reads.
    #[arg(long, default_value = "raw", value_parser = parse_score_on)]
    score_on: ScoreOn,
}

#[derive(Args)]
struct RunArgs {
    /// Input CSV (id,persian_text,english_text,items_purchased,stars);
    /// defaults to the embedded fixture.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Report JSON; printed to stdout when omitted.
    #[arg(long)]
    out_report: Option<PathBuf>,
    /// Per-record output, JSONL or CSV by extension.
    #[arg(long)]
    out_records: Option<PathBuf>,
    /// Directory for the figure CSV tables.
    #[arg(long)]
    out_figures_dir: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "A1,A2,A3", value_parser = parse_approach)]
    approaches: Vec<ApproachId>,
    /// FIS config TOML; defaults to the shipped config.
    #[arg(long)]
    fis_config: Option<PathBuf>,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    text: TextArgs,
}

#[derive(Args)]
struct ScoreArgs {
    text: String,
    /// Also print the refined triples of every approach.
    #[arg(long)]
    all_approaches: bool,
    #[command(flatten)]
    text_args: TextArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    fis_config: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Anchor CSV (pos,neg,neu,approach,expected); defaults to the shipped anchors.
    #[arg(long)]
    anchors: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    grid_lo: f64,
    #[arg(long, default_value_t = 0.9)]
    grid_hi: f64,
    #[arg(long, default_value_t = 0.1)]
    grid_step: f64,
    /// Evaluate a single breakpoint vector l1,l2,m_lo,m_peak,m_hi,h1,h2
    /// instead of a grid.
    #[arg(long, value_delimiter = ',')]
    grid_point: Option<Vec<f64>>,
    /// Defuzzify by sampling at this step instead of exactly.
    #[arg(long)]
    grid_sampled_step: Option<f64>,
    /// Where to write the fitted FIS config.
    #[arg(long, default_value = "calibrated_fis.toml")]
    out_fis_config: PathBuf,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct FixtureArgs {
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_score_on(s: &str) -> Result<ScoreOn, String> {
    s.parse()
}

fn parse_approach(s: &str) -> Result<ApproachId, String> {
    s.parse()
        .map_err(|e: sentfis::refine::ParseApproachError| e.to_string())
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn load_lexicon(path: Option<&Path>) -> Result<SentimentLexicon> {
    let Some(path) = path else {
        return Ok(SentimentLexicon::embedded());
    };
    let (lex, diagnostics) =
        scorer::load_lexicon(path).with_context(|| format!("stage lexicon: {}", path.display()))?;
    for d in diagnostics {
        eprintln!("warning: {} line {}: {}", path.display(), d.line, d.message);
    }
    Ok(lex)
}

fn load_clean_config(path: Option<&Path>) -> Result<CleanConfig> {
    match path {
        None => Ok(CleanConfig::default()),
        Some(p) => Ok(CleanConfig::with_stopwords(
            load_stopwords(p).with_context(|| format!("stage stopwords: {}", p.display()))?,
        )),
    }
}

fn load_fis(path: Option<&Path>) -> Result<SentimentFis> {
    match path {
        None => Ok(default_config().build()?),
        Some(p) => {
            let file = FisFile::from_file(p).with_context(|| "stage fis-config".to_string())?;
            SentimentFis::from_fis_file(&file, Defuzz::Exact)
                .with_context(|| format!("stage fis-config: {}", p.display()))
        }
    }
}

fn load_records(input: Option<&Path>) -> Result<Vec<ReviewRecord>> {
    let Some(path) = input else {
        return Ok(load_fixture());
    };
    let ingested = ingest_csv(path, &CsvSchema::default()).context("stage ingest")?;
    if !ingested.rejected.is_empty() {
        for e in &ingested.rejected {
            eprintln!("error: stage ingest: {}: {e}", path.display());
        }
        bail!(
            "stage ingest: {} of {} rows rejected in {}",
            ingested.rejected.len(),
            ingested.rejected.len() + ingested.records.len(),
            path.display()
        );
    }
    Ok(ingested.records)
}

fn write_file(path: &Path, body: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn cmd_run(args: RunArgs) -> Result<()> {
    if args.approaches.is_empty() {
        bail!("at least one approach is required");
    }
    let mut approaches = args.approaches.clone();
    approaches.sort();
    approaches.dedup();
    let pipeline = Pipeline {
        lexicon: load_lexicon(args.text.lexicon.as_deref())?,
        clean: load_clean_config(args.text.stopwords.as_deref())?,
        fis: load_fis(args.fis_config.as_deref())?,
        approaches: approaches.clone(),
        score_on: args.text.score_on,
        exec: exec(args.sequential),
    };
    let records = load_records(args.input.as_deref())?;
    // Resolve output locations before the pipeline starts.
    for dir in [args.out_report.as_deref(), args.out_records.as_deref()]
        .into_iter()
        .flatten()
        .filter_map(Path::parent)
        .chain(args.out_figures_dir.as_deref())
        .filter(|d| !d.as_os_str().is_empty())
    {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let scored = pipeline.run(&records).map_err(|e| anyhow!("stage {e}"))?;
    let report = build_report(&scored, &approaches).map_err(|e| anyhow!("stage analysis: {e}"))?;

    // Single writer after the parallel phase.
    let report_json = json::to_string_pretty(&report)?;
    match &args.out_report {
        Some(p) => write_file(p, report_json.as_bytes())?,
        None => io::stdout().write_all(report_json.as_bytes())?,
    }
    if let Some(p) = &args.out_records {
        let is_csv = p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            let mut buf = Vec::new();
            write_records_csv(&scored, &approaches, &mut buf)?;
            write_file(p, &buf)?;
        } else {
            emit_jsonl(&scored, p)?;
        }
    }
    if let Some(dir) = &args.out_figures_dir {
        write_figures(&report, &scored, dir).map_err(|e| anyhow!("stage figures: {e}"))?;
    }
    eprintln!(
        "scored {} records ({} text) with {}",
        scored.len(),
        args.text.score_on,
        approaches
            .iter()
            .map(|a| a.as_str())
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(())
}

fn triple_line(t: ScoreTriple) -> String {
    format!(
        "Positive: {:.3}\tNeutral: {:.3}\tNegative: {:.3}",
        t.positive, t.neutral, t.negative
    )
}

fn cmd_score(args: ScoreArgs) -> Result<()> {
    let lex = load_lexicon(args.text_args.lexicon.as_deref())?;
    let text = match args.text_args.score_on {
        ScoreOn::Raw => args.text.clone(),
        ScoreOn::Clean => clean_text(
            &args.text,
            &load_clean_config(args.text_args.stopwords.as_deref())?,
        ),
    };
    let base = score(&text, &lex);
    if args.all_approaches {
        for (i, a) in ApproachId::ALL.into_iter().enumerate() {
            println!("Approach {}\t{}", i + 1, triple_line(refine(base, a)?));
        }
    } else {
        println!("{}", triple_line(base));
    }
    Ok(())
}

fn cmd_validate(args: ValidateArgs) -> Result<bool> {
    let file = match &args.fis_config {
        Some(p) => FisFile::from_file(p)?,
        None => default_config().to_fis_file()?,
    };
    let rb = file.to_rulebase()?;
    let report = validate_rulebase(&rb);
    println!("complete: {}", report.complete);
    println!("consistent: {}", report.consistent);
    println!("continuous: {}", report.continuous);
    for v in &report.violations {
        println!("{v}");
    }
    Ok(report.passed())
}

fn cmd_calibrate(args: CalibrateArgs) -> Result<()> {
    let anchors = match &args.anchors {
        Some(p) => load_anchors(p)?,
        None => parse_anchors(ANCHORS_CSV.as_bytes())?,
    };
    let mut grid = match &args.grid_point {
        Some(p) => GridSpec::single(InputParams::from_array(
            p.as_slice()
                .try_into()
                .map_err(|_| anyhow!("--grid-point needs 7 values"))?,
        )),
        None => {
            let values = axis(args.grid_lo, args.grid_hi, args.grid_step);
            if values.is_empty() {
                bail!(
                    "empty grid: lo {} hi {} step {}",
                    args.grid_lo,
                    args.grid_hi,
                    args.grid_step
                );
            }
            GridSpec::uniform(args.grid_lo, args.grid_hi, args.grid_step)
        }
    };
    if let Some(step) = args.grid_sampled_step {
        grid.defuzz = Defuzz::Sampled { step };
    }
    eprintln!(
        "searching {} candidates against {} anchors",
        grid.len(),
        anchors.len()
    );
    let (config, report): (SentimentFisConfig, _) =
        calibrate(&anchors, &grid, exec(args.sequential))?;

    let mut out = BufWriter::new(io::stdout());
    writeln!(out, "best: {}", report.params)?;
    writeln!(out, "pos\tneg\tneu\tapproach\texpected\toutput\tresidual")?;
    for r in &report.residuals {
        let b = r.anchor.base;
        writeln!(
            out,
            "{:.6}\t{:.6}\t{:.6}\t{}\t{:.6}\t{:.6}\t{:+.6}",
            b.positive,
            b.negative,
            b.neutral,
            r.anchor.approach,
            r.anchor.expected,
            r.output,
            r.residual
        )?;
    }
    writeln!(out, "sse: {:.6e}", report.sse)?;
    writeln!(out, "max residual: {:.6}", report.max_abs_residual)?;
    writeln!(
        out,
        "candidates: {} ({} admissible)",
        report.candidates, report.admissible
    )?;
    out.flush()?;
    write_file(
        &args.out_fis_config,
        config.to_fis_file()?.to_toml_string().as_bytes(),
    )?;
    eprintln!("wrote {}", args.out_fis_config.display());
    Ok(())
}

fn cmd_fixture(args: FixtureArgs) -> Result<()> {
    match &args.out {
        Some(p) => write_file(p, fixture_csv().as_bytes()),
        None => Ok(io::stdout().write_all(fixture_csv().as_bytes())?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => cmd_run(a).map(|_| true),
        Command::Score(a) => cmd_score(a).map(|_| true),
        Command::ValidateRules(a) => cmd_validate(a),
        Command::Calibrate(a) => cmd_calibrate(a).map(|_| true),
        Command::Fixture(a) => cmd_fixture(a).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
