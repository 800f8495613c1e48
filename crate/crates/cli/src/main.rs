//! `gdd`: build, inspect and decode with coset tables of binary linear codes.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gdd::codes::CodeSpec;
use gdd::{Error, ErrorKind, Exec};

/// Largest `n - k` the CLI builds without `--force`.
pub const CLI_MAX_REDUNDANCY: usize = 14;

#[derive(Parser)]
#[command(
    name = "gdd",
    version,
    about = "Coset tables and gradient descent decoding for binary linear codes"
)]
struct Cli {
    /// Run on a single thread.
    #[arg(long, global = true)]
    sequential: bool,

    /// Suppress informational messages on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the table of a code and write it to a file.
    Build(BuildArgs),
    /// Print statistics of a representation.
    Inspect(SourceArgs),
    /// Decode received words, one per line.
    Decode(DecodeArgs),
    /// Print the border, reduced border or test sets of a code.
    Border(BorderArgs),
    /// Check every invariant of a code's tables and decoders.
    Verify(VerifyArgs),
    /// Decode words sent through a binary symmetric channel (or all words) and compare decoders.
    Simulate(SimulateArgs),
    /// Time table construction and per-word decoding.
    Bench(BenchArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Code: hamming:R, repetition:N, random:N,K[,SEED] or file:PATH.
    #[arg(long)]
    code: Option<CodeSpec>,

    /// Representation file written by `gdd build`.
    #[arg(long)]
    rep: Option<PathBuf>,
}

#[derive(Args)]
struct SourceArgs {
    #[command(flatten)]
    source: Source,

    /// Skip validation when loading a representation file.
    #[arg(long)]
    trusted: bool,

    /// Lift size limits.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    code: CodeSpec,

    /// Output file.
    out: PathBuf,

    /// Store leader weights only.
    #[arg(long, conflicts_with = "full")]
    compact: bool,

    /// Store the leader vectors (default).
    #[arg(long)]
    full: bool,

    /// Allow n - k above the default cap.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    L,
    Ts,
    Red,
    Compact,
    Ml,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TestSetChoice {
    /// All minimal codewords.
    Minimal,
    /// Codewords of the reduced border.
    Minred,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    source: SourceArgs,

    #[arg(long, value_enum, default_value = "l")]
    algorithm: Algorithm,

    /// Test set for `--algorithm ts`.
    #[arg(long, value_enum, default_value = "minimal")]
    test_set: TestSetChoice,

    /// Words are hexadecimal integers, first position most significant.
    #[arg(long)]
    hex: bool,

    /// Read words from a file instead of stdin.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct BorderSelect {
    /// Every border element.
    #[arg(long)]
    full: bool,
    /// Reduced border.
    #[arg(long)]
    reduced: bool,
    /// Codewords of the reduced border.
    #[arg(long)]
    minred: bool,
    /// All minimal codewords, by brute force.
    #[arg(long)]
    minwords: bool,
}

#[derive(Args)]
struct BorderArgs {
    #[command(flatten)]
    source: SourceArgs,

    #[command(flatten)]
    select: BorderSelect,

    /// Check that every reduced-border codeword is minimal.
    #[arg(long)]
    verify_prop1: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: CodeSpec,

    /// Crossover probability.
    #[arg(long, required_unless_present = "exhaustive")]
    p: Option<f64>,

    /// Number of channel uses; accepts forms like 1e5.
    #[arg(long, value_parser = parse_count, default_value = "100000")]
    trials: u64,

    /// RNG seed; drawn at random and printed when omitted.
    #[arg(long)]
    seed: Option<u64>,

    /// Send random codewords instead of the zero word.
    #[arg(long)]
    random_codewords: bool,

    /// Decode every word of the ambient space instead of sampling.
    #[arg(long, conflicts_with_all = ["p", "seed", "random_codewords"])]
    exhaustive: bool,

    /// Comma-separated decoders: ml, l, red, compact, ts, ts-minred.
    #[arg(long, value_delimiter = ',')]
    decoders: Option<Vec<String>>,

    /// Print the report as JSON.
    #[arg(long)]
    json: bool,

    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Code timed for per-word decoding.
    #[arg(long, default_value = "random:24,8,1")]
    code: CodeSpec,

    /// Dimension of the codes in the build sweep.
    #[arg(long, default_value_t = 8)]
    k: usize,

    /// Largest n - k in the build sweep.
    #[arg(long, default_value_t = 12)]
    max_redundancy: usize,

    /// Words decoded per algorithm.
    #[arg(long, value_parser = parse_count, default_value = "100000")]
    words: u64,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    #[arg(long)]
    force: bool,
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a count"))?;
    if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= 2f64.powi(53) {
        Ok(v as u64)
    } else {
        Err(format!("`{s}` is not a whole number of trials"))
    }
}

/// Failure of a subcommand, mapped onto the process exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Invariant(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.kind() {
            ErrorKind::Usage => Failure::Usage(e.to_string()),
            ErrorKind::Data => Failure::Data(e.to_string()),
            ErrorKind::Invariant => Failure::Invariant(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

pub struct Context {
    pub exec: Exec,
    pub quiet: bool,
}

impl Context {
    pub fn info(&self, msg: impl std::fmt::Display) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let ctx = Context {
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
        quiet: cli.quiet,
    };
    let result = match cli.command {
        Command::Build(a) => commands::build(&ctx, a),
        Command::Inspect(a) => commands::inspect(&ctx, a),
        Command::Decode(a) => commands::decode(&ctx, a),
        Command::Border(a) => commands::border(&ctx, a),
        Command::Verify(a) => commands::verify(&ctx, a),
        Command::Simulate(a) => commands::simulate(&ctx, a),
        Command::Bench(a) => commands::bench(&ctx, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
