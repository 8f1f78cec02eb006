//! Command-line front end: analyze and factorize single words, count rich
//! words, emit bound reports, and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification/assertion failure or budget
//! exhaustion (or a non-rich word passed to `factorize`), 2 usage or parse
//! errors.

mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{
    AnalyzeOutput, BoundsOutput, CountOutput, FactorizeOutput, Format, VerifyOutput,
    SCHEMA_VERSION,
};
use richlang::bounds::{bound_reports, verify_theorem_a, BoundReport};
use richlang::enumerate::{collect_stats, count_rich_with, EnumerateError, Mode, SearchConfig};
use richlang::rich::{greedy_palindromic_suffix_factorization, ups_factorize, RichError};
use richlang::words::WordError;
use richlang::{Alphabet, Eertree, Word};

const WORKERS_ENV: &str = "RICHLANG_WORKERS";

#[derive(Parser)]
#[command(
    name = "richlang",
    version,
    about = "Rich words: analysis, UPS-factorization, exhaustive counting, bound verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a word: richness, defect, distinct palindromic factors
    Analyze(AnalyzeArgs),
    /// UPS-factorize a rich word (greedy fallback with --permissive)
    Factorize(FactorizeArgs),
    /// Count rich words of each length and report growth roots
    Count(CountArgs),
    /// Per-length bound report; exits 1 if any bound assertion fails
    Bounds(BoundsArgs),
    /// Run verification suites (oracle | lemmas | appendix | all)
    Verify(VerifyArgs),
}

#[derive(Args)]
struct IoArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlphabetArg {
    /// Alphabet size (letters render as a-z then 0-9)
    #[arg(long = "q", default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=36))]
    q: u8,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Word over the declared alphabet (may be empty)
    word: String,
    #[command(flatten)]
    alphabet: AlphabetArg,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct FactorizeArgs {
    /// Word over the declared alphabet (may be empty)
    word: String,
    #[command(flatten)]
    alphabet: AlphabetArg,
    /// Apply greedy longest-palindromic-suffix stripping even to non-rich
    /// words (no distinctness guarantee)
    #[arg(long)]
    permissive: bool,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Reduced,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest length to enumerate
    #[arg(long = "max-n")]
    max_n: usize,
    /// Enumeration strategy; both give identical counts
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Worker threads (default: $RICHLANG_WORKERS, else 1)
    #[arg(long)]
    workers: Option<usize>,
    /// Cap on eertree appends before returning a partial table
    #[arg(long)]
    node_budget: Option<u64>,
    /// Wall-clock cap in seconds
    #[arg(long)]
    time_budget_secs: Option<f64>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    alphabet: AlphabetArg,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    alphabet: AlphabetArg,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Oracle,
    Lemmas,
    Appendix,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(value_enum)]
    suite: Suite,
    #[command(flatten)]
    alphabet: AlphabetArg,
    /// Scale cap for the enumeration-backed checks
    #[arg(long = "max-n", default_value_t = 12)]
    max_n: usize,
    /// Seed for the sampled oracle comparisons
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    io: IoArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Fatal errors bubble up as Err and exit 2; expected failure modes
/// (non-rich word, failed assertion, exhausted budget) map to exit 1 with
/// their output already emitted.
fn run(command: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Factorize(args) => cmd_factorize(args),
        Command::Count(args) => cmd_count(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn emit(io: &IoArgs, body: &str) -> Result<(), Box<dyn std::error::Error>> {
    match &io.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(())
}

fn parse_word(text: &str, q: u8) -> Result<Word, WordError> {
    Word::parse(text, &Alphabet::new(q).expect("clap enforces 2..=36"))
}

fn search_config(args: &SearchArgs) -> Result<SearchConfig, Box<dyn std::error::Error>> {
    let workers = match args.workers {
        Some(w) => w,
        None => match std::env::var(WORKERS_ENV) {
            Ok(raw) => raw
                .parse::<usize>()
                .map_err(|_| format!("{WORKERS_ENV} must be a positive integer, got {raw:?}"))?,
            Err(_) => 1,
        },
    };
    if workers == 0 {
        return Err("worker count must be >= 1".into());
    }
    Ok(SearchConfig {
        workers,
        node_budget: args.node_budget,
        time_budget: args.time_budget_secs.map(Duration::from_secs_f64),
        ..SearchConfig::default()
    })
}

fn mode_of(arg: ModeArg) -> (Mode, &'static str) {
    match arg {
        ModeArg::Exact => (Mode::Exact, "exact"),
        ModeArg::Reduced => (Mode::SymmetryReduced, "reduced"),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let q = args.alphabet.q;
    let word = parse_word(&args.word, q)?;
    let mut tree = Eertree::new(&Alphabet::new(q).unwrap());
    for &x in word.letters() {
        tree.append(x).expect("parse validated the letters");
    }
    let distinct = tree.distinct_palindromes();
    let report = AnalyzeOutput {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        q,
        word: word.to_string(),
        n: word.len(),
        rich: distinct == word.len(),
        defect: word.len() - distinct,
        palindromic_factors: distinct + 1,
    };
    emit(&args.io, &report.render(args.io.format))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_factorize(args: FactorizeArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let q = args.alphabet.q;
    let word = parse_word(&args.word, q)?;
    let (method, parts) = if args.permissive {
        ("greedy-palindromic-suffix", greedy_palindromic_suffix_factorization(&word))
    } else {
        match ups_factorize(&word) {
            Ok(f) => ("ups", f.parts().to_vec()),
            Err(RichError::NotRich { defect }) => {
                eprintln!(
                    "error: {:?} is not rich (defect {defect}); rerun with --permissive for a \
                     greedy factorization",
                    args.word
                );
                return Ok(ExitCode::FAILURE);
            }
        }
    };
    let report = FactorizeOutput {
        schema_version: SCHEMA_VERSION,
        command: "factorize",
        q,
        method,
        word: word.to_string(),
        rich: richlang::rich::is_rich(&word),
        defect: richlang::rich::defect(&word),
        p: parts.len(),
        parts: parts.iter().map(Word::to_string).collect(),
        n: word.len(),
    };
    emit(&args.io, &report.render(args.io.format))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_count(args: CountArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let q = args.alphabet.q;
    let (mode, mode_name) = mode_of(args.search.mode);
    let config = search_config(&args.search)?;
    let (table, complete) = match count_rich_with(q, args.search.max_n, mode, &config) {
        Ok(table) => (table, true),
        Err(EnumerateError::BudgetExceeded { partial: Some(partial), last_completed }) => {
            eprintln!(
                "warning: budget exhausted; table truncated at n = {}",
                last_completed.expect("table-producing call always names a length")
            );
            (partial, false)
        }
        Err(e) => return Err(e.into()),
    };
    let report = CountOutput::from_table(q, args.search.max_n, mode_name, complete, &table);
    emit(&args.io, &report.render(args.io.format, &table))?;
    Ok(if complete { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_bounds(args: BoundsArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let q = args.alphabet.q;
    let (mode, _) = mode_of(args.search.mode);
    let config = search_config(&args.search)?;
    let table = match count_rich_with(q, args.search.max_n, mode, &config) {
        Ok(table) => table,
        Err(EnumerateError::BudgetExceeded { last_completed, .. }) => {
            eprintln!(
                "error: budget exhausted while counting (completed {:?}); no report emitted",
                last_completed
            );
            return Ok(ExitCode::FAILURE);
        }
        Err(e) => return Err(e.into()),
    };
    let stats = match collect_stats(q, table.max_n(), &config) {
        Ok(stats) => stats,
        Err(EnumerateError::BudgetExceeded { .. }) => {
            eprintln!("error: budget exhausted while collecting statistics; no report emitted");
            return Ok(ExitCode::FAILURE);
        }
        Err(e) => return Err(e.into()),
    };
    let rows = bound_reports(&table, &stats)?;
    let theorem_a = verify_theorem_a(&stats, q);
    let all_hold = rows.iter().all(BoundReport::assertions_hold) && theorem_a.all_within;
    let report = BoundsOutput::new(q, table.max_n(), theorem_a, &rows, all_hold);
    emit(&args.io, &report.render(args.io.format, &rows))?;
    Ok(if all_hold { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let q = args.alphabet.q;
    let mut suite_reports = Vec::new();
    let mut info = Vec::new();
    if matches!(args.suite, Suite::Oracle | Suite::All) {
        suite_reports.push(suites::run_oracle(q, args.max_n, args.seed));
    }
    if matches!(args.suite, Suite::Lemmas | Suite::All) {
        suite_reports.push(suites::run_lemmas(q, args.max_n));
    }
    if matches!(args.suite, Suite::Appendix | Suite::All) {
        let (report, appendix_info) = suites::run_appendix(q, args.max_n);
        suite_reports.push(report);
        info.extend(appendix_info);
    }
    if matches!(args.suite, Suite::All) {
        suite_reports.push(suites::run_roundtrip(q, args.max_n));
    }
    let pass = suite_reports.iter().all(|s| s.failures.is_empty());
    let report = VerifyOutput {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        q,
        max_n: args.max_n,
        seed: args.seed,
        suites: suite_reports,
        info,
        pass,
    };
    emit(&args.io, &report.render(args.io.format))?;
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
