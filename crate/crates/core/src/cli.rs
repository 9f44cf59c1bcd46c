//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or invalid arguments, 2 runtime / I/O /
//! capacity error, 3 uniformity verification failed.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bench::{emit_report, sweep, Method, ReportFormat, DEFAULT_REPETITIONS};
use crate::error::SampleError;
use crate::extraction::{generate_codes, select_lines, Alphabet};
use crate::rng::{entropy_seed, SplitMix64};
use crate::sampler::{sample_indices, Mode};
use crate::statistics::{exact_check, run_trials, uniformity_check, DEFAULT_SIGMA_BOUND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cachediff", version, about = "Uniform k-of-N sampling without replacement in O(k) time and space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Select k distinct indices from 0..N.
    ///
    /// Indices are printed in selection order: the first one was swapped out
    /// of position N-1, the second out of N-2, and so on. A materialized
    /// index-array shuffle returns the same values in ascending position
    /// order, i.e. reversed. Pass --sorted for ascending output.
    Sample(SampleArgs),
    /// Print k uniformly chosen lines of a file, in file order.
    Lines(LinesArgs),
    /// Issue k distinct fixed-width codes from a space of N integers.
    Codes(CodesArgs),
    /// Check that every index is selected with probability k/N.
    Verify(VerifyArgs),
    /// Time the sampler against array-based and streaming baselines (CSV).
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Csv,
    JsonLines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Faithful,
    Pruned,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Faithful => Mode::Faithful,
            ModeArg::Pruned => Mode::Pruned,
        }
    }
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Population size N.
    #[arg(long)]
    n: u64,
    /// Number of indices to select.
    #[arg(long)]
    k: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "pruned")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
    /// Print indices in ascending order instead of selection order.
    #[arg(long)]
    sorted: bool,
}

#[derive(Debug, Args)]
struct LinesArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct CodesArgs {
    /// Size of the integer space codes are drawn from.
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    /// Ordered digit characters, e.g. 0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ.
    #[arg(long)]
    alphabet: String,
    /// Characters per code.
    #[arg(long)]
    width: u32,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    /// Number of independent trials (statistical mode).
    #[arg(long, required_unless_present = "exact")]
    trials: Option<u64>,
    /// Per-index tolerance in binomial standard deviations.
    #[arg(long, default_value_t = DEFAULT_SIGMA_BOUND)]
    sigma: f64,
    /// Enumerate every decision sequence instead of sampling.
    #[arg(long)]
    exact: bool,
    /// Base seed; trial t uses base + t.
    #[arg(long)]
    seed: Option<u64>,
    /// plain report or a single json-lines record.
    #[arg(long, value_enum, default_value = "plain")]
    format: OutputFormat,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated: cachediff_faithful, cachediff_pruned, full_index, full_shuffle, reservoir.
    #[arg(long, value_delimiter = ',', required = true)]
    methods: Vec<Method>,
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    n_list: Vec<u64>,
    #[arg(long = "k-list", value_delimiter = ',', required = true)]
    k_list: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
    reps: u32,
    #[arg(long)]
    seed: Option<u64>,
    /// Print an aligned table instead of CSV.
    #[arg(long)]
    human: bool,
}

#[derive(Debug)]
enum Failure {
    Sample(SampleError),
    Io(std::io::Error),
    Verification,
}

impl From<SampleError> for Failure {
    fn from(e: SampleError) -> Self {
        Failure::Sample(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `argv` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Sample(a) => cmd_sample(a, out, err),
        Command::Lines(a) => cmd_lines(a, out, err),
        Command::Codes(a) => cmd_codes(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Bench(a) => cmd_bench(a, out, err),
    };
    let code = match result {
        Ok(()) => return out.flush().map_or(EXIT_RUNTIME, |_| EXIT_OK),
        Err(Failure::Verification) => EXIT_VERIFY_FAILED,
        Err(Failure::Sample(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                SampleError::InvalidArguments(_) => EXIT_USAGE,
                _ => EXIT_RUNTIME,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_RUNTIME
        }
    };
    let _ = out.flush();
    code
}

fn resolve_seed(seed: Option<u64>, err: &mut dyn Write) -> u64 {
    seed.unwrap_or_else(|| {
        let s = entropy_seed();
        let _ = writeln!(err, "seed: {s}");
        s
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_sample(a: SampleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let seed = resolve_seed(a.seed, err);
    let mut picked = sample_indices(a.n, a.k, SplitMix64::new(seed), a.mode.into())?;
    if a.sorted {
        picked.sort_unstable();
    }
    if a.format == OutputFormat::Csv {
        writeln!(out, "index")?;
    }
    for i in picked {
        writeln!(out, "{i}")?;
    }
    Ok(())
}

fn cmd_lines(a: LinesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let seed = resolve_seed(a.seed, err);
    let selection = select_lines(&a.file, a.k, seed)?;
    if a.format == OutputFormat::Csv {
        writeln!(out, "line")?;
    }
    selection.extract(|line| {
        match a.format {
            OutputFormat::Plain => {
                out.write_all(line)?;
                out.write_all(b"\n")?;
            }
            OutputFormat::Csv => writeln!(out, "{}", csv_field(&String::from_utf8_lossy(line)))?,
            OutputFormat::JsonLines => writeln!(out, "{}", json!(String::from_utf8_lossy(line)))?,
        }
        Ok(())
    })?;
    Ok(())
}

fn cmd_codes(a: CodesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let alphabet = Alphabet::new(&a.alphabet)?;
    let seed = resolve_seed(a.seed, err);
    let batch = generate_codes(a.n, a.k, seed, &alphabet, a.width)?;
    let _ = writeln!(err, "per-guess hit probability k/N = {:e}", batch.hit_probability());
    if a.format == OutputFormat::Csv {
        writeln!(out, "code")?;
    }
    for code in &batch.codes {
        match a.format {
            OutputFormat::Plain => writeln!(out, "{code}")?,
            OutputFormat::Csv => writeln!(out, "{}", csv_field(code))?,
            OutputFormat::JsonLines => writeln!(out, "{}", json!(code))?,
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    if a.sigma.is_nan() || a.sigma <= 0.0 {
        return Err(SampleError::invalid("--sigma must be positive").into());
    }
    let json = a.format == OutputFormat::JsonLines;
    let p = if a.n == 0 { 0.0 } else { a.k as f64 / a.n as f64 };
    let pass = if a.exact {
        let report = exact_check(a.n, a.k)?;
        if json {
            let record = json!({
                "method": "exact",
                "n": a.n,
                "k": a.k,
                "sequences": report.sequences,
                "expected_probability": p,
                "index_counts": report.index_counts,
                "distinct_subsets": report.distinct_subsets,
                "verdict": report.verdict,
            });
            writeln!(out, "{record}")?;
        } else {
            writeln!(out, "verify n={} k={} method=exact sequences={}", a.n, a.k, report.sequences)?;
            writeln!(out, "expected probability k/n = {p:.6}")?;
            for (i, c) in report.index_counts.iter().enumerate() {
                let freq = *c as f64 / report.sequences as f64;
                writeln!(out, "index {i}: {c}/{} = {freq:.6}", report.sequences)?;
            }
            writeln!(out, "distinct subsets: {}", report.distinct_subsets)?;
            writeln!(out, "verdict: {}", if report.verdict.pass { "PASS" } else { "FAIL" })?;
        }
        report.verdict.pass
    } else {
        let trials = a.trials.unwrap_or_default();
        let seed = resolve_seed(a.seed, err);
        let tally = run_trials(a.n, a.k, trials, seed)?;
        let verdict = uniformity_check(&tally, a.sigma)?;
        if json {
            let record = json!({
                "method": "trials",
                "n": a.n,
                "k": a.k,
                "trials": trials,
                "base_seed": seed,
                "sigma_bound": a.sigma,
                "expected_probability": p,
                "verdict": verdict,
            });
            writeln!(out, "{record}")?;
        } else {
            writeln!(
                out,
                "verify n={} k={} method=trials trials={trials} base_seed={seed} sigma_bound={}",
                a.n, a.k, a.sigma
            )?;
            writeln!(out, "expected probability k/n = {p:.6}")?;
            for (i, c) in tally.counts.iter().enumerate() {
                writeln!(out, "index {i}: {c}/{trials} = {:.6}", *c as f64 / trials as f64)?;
            }
            writeln!(
                out,
                "worst index: {} at {:.3} sigma",
                verdict.worst_index, verdict.worst_deviation_sigmas
            )?;
            writeln!(
                out,
                "chi-square: {:.3} (df {}, diagnostic only)",
                verdict.chi_square, verdict.degrees_of_freedom
            )?;
            writeln!(out, "verdict: {}", if verdict.pass { "PASS" } else { "FAIL" })?;
        }
        verdict.pass
    };
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let seed = resolve_seed(a.seed, err);
    let records = sweep(&a.methods, &a.n_list, &a.k_list, a.reps, seed)?;
    for r in records.iter().filter(|r| r.is_skipped()) {
        let _ = writeln!(
            err,
            "skipped {} n={} k={}: {}",
            r.method,
            r.n,
            r.k,
            r.skipped.as_deref().unwrap_or_default()
        );
    }
    let format = if a.human { ReportFormat::Human } else { ReportFormat::Csv };
    out.write_all(emit_report(&records, format)?.as_bytes())?;
    Ok(())
}
