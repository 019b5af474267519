//! `acymatch`: analyze acyclic matchings in abelian groups, generate weak
//! subset pairs, run conjecture scans, and verify the built-in fixtures.
//!
//! Exit codes: 0 success, 2 usage, 3 validation, 4 cap exceeded, 5 I/O.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use acymatch::fixtures::{self, FixtureStatus};
use acymatch::group::GroupSpec;
use acymatch::harness::{self, ConjectureId, ScanConfig};
use acymatch::matching::{MatchError, MatchMode, DEFAULT_CAP};
use acymatch::pair::SubsetPair;
use acymatch::pairgen::PairQuery;
use acymatch::report;

const CAP_ENV: &str = "ACYMATCH_CAP";

#[derive(Debug)]
enum CliError {
    Usage(String),
    Validation(String),
    Cap(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Cap(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Validation(m) => write!(f, "validation: {m}"),
            CliError::Cap(m) => write!(f, "cap: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "acymatch",
    version,
    about = "Acyclic matchings in abelian groups: analysis, pair search, conjecture scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one pair: matching table, filter trace, classification.
    Analyze(AnalyzeArgs),
    /// Stream subset pairs of a finite group.
    Pairs(PairsArgs),
    /// Scan pair streams for conjecture counterexamples.
    Search(SearchArgs),
    /// Run the built-in worked-example fixtures.
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Bijection,
}

impl From<ModeArg> for MatchMode {
    fn from(m: ModeArg) -> MatchMode {
        match m {
            ModeArg::Strict => MatchMode::Strict,
            ModeArg::Bijection => MatchMode::BijectionCompat,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Group spec: cyclic factors joined by 'x', e.g. 14, 2x4, 0 (= Z).
    #[arg(long)]
    group: String,
    /// Elements of A: ';' between elements, ',' within coordinates. For
    /// rank-1 groups, a comma list like 1,3,5,7 is accepted.
    #[arg(long = "A")]
    a: String,
    /// Elements of B (same format as --A).
    #[arg(long = "B")]
    b: String,
    #[arg(long, value_enum, default_value = "strict")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
}

#[derive(Args)]
struct PairsArgs {
    #[arg(long)]
    group: String,
    /// Single subset size.
    #[arg(long, conflicts_with = "sizes")]
    size: Option<usize>,
    /// Inclusive size range, e.g. 2..4.
    #[arg(long)]
    sizes: Option<String>,
    /// Stop after this many pairs.
    #[arg(long)]
    limit: Option<u64>,
    /// Also emit pairs violating the weak condition.
    #[arg(long)]
    include_nonweak: bool,
    /// Keep only translation-class representatives of A.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Inclusive range of cyclic group orders, e.g. 3..11 (or a single
    /// order).
    #[arg(long)]
    groups: String,
    /// Inclusive size range, e.g. 2..4 (clamped per group).
    #[arg(long)]
    sizes: String,
    #[arg(long, value_enum, default_value = "strict")]
    mode: ModeArg,
    /// Comma-separated statement ids to report on: 2.1, 3.1, 3.7, 3.14,
    /// thm3.5. Default: all.
    #[arg(long)]
    conjectures: Option<String>,
    /// Restrict output records to pairs where B ∪ {0} is a subgroup
    /// (Theorem 3.5 regression mode).
    #[arg(long = "theorem-3.5-only")]
    theorem_35_only: bool,
    /// Worker threads; the output is identical for every value.
    #[arg(long, default_value = "1")]
    jobs: usize,
    /// Write one verdict record per pair to this file.
    #[arg(long)]
    out: Option<String>,
    /// Record format for --out.
    #[arg(long, value_enum, default_value = "jsonl")]
    format: RecordFormat,
    /// Include per-pair wall-clock timings in records (breaks byte-for-byte
    /// reproducibility).
    #[arg(long)]
    timings: bool,
    /// Also evaluate pairs violating the weak condition.
    #[arg(long)]
    include_nonweak: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum RecordFormat {
    Jsonl,
    Csv,
}

fn main() -> ExitCode {
    // downstream consumers like `head` close the pipe early; die quietly the
    // Unix way instead of panicking on EPIPE
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn cap_from_env() -> Result<u64, CliError> {
    match std::env::var(CAP_ENV) {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            CliError::Usage(format!("{CAP_ENV}='{text}' is not a non-negative integer"))
        }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn parse_group(text: &str) -> Result<GroupSpec, CliError> {
    text.parse::<GroupSpec>()
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Parses "a..b" or a single "a" into an inclusive range.
fn parse_range(text: &str, what: &str) -> Result<(u64, u64), CliError> {
    let parse_one = |tok: &str| {
        tok.trim()
            .parse::<u64>()
            .map_err(|_| CliError::Usage(format!("bad {what} token '{tok}'")))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (parse_one(lo)?, parse_one(hi)?),
        None => {
            let v = parse_one(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(CliError::Usage(format!("empty {what} range {lo}..{hi}")));
    }
    Ok((lo, hi))
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Pairs(args) => cmd_pairs(args),
        Command::Search(args) => cmd_search(args),
        Command::Verify => cmd_verify(),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<ExitCode, CliError> {
    let cap = cap_from_env()?;
    let spec = parse_group(&args.group)?;
    let pair = SubsetPair::parse(&spec, &args.a, &args.b)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let report = report::build_report(&pair, args.mode.into(), cap)
        .map_err(|e @ MatchError::CapExceeded { .. }| CliError::Cap(e.to_string()))?;
    let rendered = match args.format {
        FormatArg::Table => report::render_table(&report),
        FormatArg::Json => report::render_json(&report),
        FormatArg::Csv => report::render_csv(&report),
    };
    print!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_pairs(args: PairsArgs) -> Result<ExitCode, CliError> {
    let spec = parse_group(&args.group)?;
    let (lo, hi) = match (args.size, &args.sizes) {
        (Some(s), None) => (s, s),
        (None, Some(text)) => {
            let (lo, hi) = parse_range(text, "size")?;
            (lo as usize, hi as usize)
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --size or --sizes is required".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let query = PairQuery::new(spec, lo, hi)
        .map_err(|e| CliError::Usage(e.to_string()))?
        .require_weak(!args.include_nonweak)
        .normalize_translations(args.normalize)
        .limit(args.limit);

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut count = 0u64;
    for pair in query.pairs() {
        let spec = pair.spec();
        writeln!(
            out,
            "{}\t{}",
            spec.set_text(pair.a()),
            spec.set_text(pair.b())
        )
        .map_err(|e| CliError::Io(e.to_string()))?;
        count += 1;
    }
    writeln!(out, "# {count} pairs").map_err(|e| CliError::Io(e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}

fn selected_conjectures(text: &Option<String>) -> Result<Vec<ConjectureId>, CliError> {
    match text {
        None => Ok(vec![
            ConjectureId::C21,
            ConjectureId::C31,
            ConjectureId::C37,
            ConjectureId::C314,
            ConjectureId::Thm35,
        ]),
        Some(list) => list
            .split(',')
            .map(|tok| {
                ConjectureId::parse(tok)
                    .ok_or_else(|| CliError::Usage(format!("unknown conjecture id '{tok}'")))
            })
            .collect(),
    }
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode, CliError> {
    let cap = cap_from_env()?;
    let (glo, ghi) = parse_range(&args.groups, "group")?;
    if glo < 2 {
        return Err(CliError::Usage("group orders start at 2".into()));
    }
    let (slo, shi) = parse_range(&args.sizes, "size")?;
    if slo < 1 {
        return Err(CliError::Usage("sizes start at 1".into()));
    }
    let selected = selected_conjectures(&args.conjectures)?;
    let groups: Vec<GroupSpec> = (glo..=ghi)
        .map(|n| GroupSpec::cyclic(n as i64).expect("orders >= 2 are valid"))
        .collect();
    let config = ScanConfig {
        groups,
        size_min: slo as usize,
        size_max: shi as usize,
        mode: args.mode.into(),
        require_weak: !args.include_nonweak,
        jobs: args.jobs,
        cap,
    };

    let mut writer: Option<BufWriter<File>> = match &args.out {
        Some(path) => Some(BufWriter::new(
            File::create(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        )),
        None => None,
    };
    if let (Some(w), RecordFormat::Csv) = (&mut writer, args.format) {
        writeln!(w, "{}", report::VERDICT_CSV_HEADER).map_err(|e| CliError::Io(e.to_string()))?;
    }

    let mut io_err: Option<std::io::Error> = None;
    let summary = harness::scan(&config, |verdict| {
        if io_err.is_some() {
            return;
        }
        if args.theorem_35_only && !verdict.thm35_applicable {
            return;
        }
        if let Some(w) = &mut writer {
            let res = match args.format {
                RecordFormat::Jsonl => report::write_verdict_line(w, verdict, args.timings),
                RecordFormat::Csv => writeln!(w, "{}", report::verdict_csv_line(verdict)),
            };
            if let Err(e) = res {
                io_err = Some(e);
            }
        }
    });
    if let Some(e) = io_err {
        return Err(CliError::Io(e.to_string()));
    }
    if let Some(w) = &mut writer {
        w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    }

    println!("{summary}");
    for id in selected {
        let list = match id {
            ConjectureId::C21 => &summary.c21_counterexamples,
            ConjectureId::C31 => &summary.c31_counterexamples,
            ConjectureId::C37 => &summary.c37_refutations,
            ConjectureId::C314 => &summary.c314_counterexamples,
            ConjectureId::Thm35 => &summary.thm35_violations,
        };
        if list.is_empty() {
            println!("{id}: no counterexamples");
        } else {
            println!("{id}: {} counterexamples, first: {}", list.len(), list[0]);
        }
    }
    if args.theorem_35_only {
        println!(
            "theorem-3.5 pairs: {} applicable, {} violations",
            summary.thm35_applicable,
            summary.thm35_violations.len()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify() -> Result<ExitCode, CliError> {
    let outcomes = fixtures::run_fixtures();
    for o in &outcomes {
        let tag = match o.status {
            FixtureStatus::Pass => "PASS",
            FixtureStatus::Notice => "NOTICE",
            FixtureStatus::Fail => "FAIL",
        };
        println!("{tag:<6} {:<24} {}", o.name, o.detail);
    }
    let failures = outcomes
        .iter()
        .filter(|o| o.status == FixtureStatus::Fail)
        .count();
    if failures > 0 {
        println!("{failures} fixture(s) failed");
        return Ok(ExitCode::FAILURE);
    }
    println!(
        "all fixtures pass ({} with expected notices)",
        outcomes
            .iter()
            .filter(|o| o.status == FixtureStatus::Notice)
            .count()
    );
    Ok(ExitCode::SUCCESS)
}
