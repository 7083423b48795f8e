//! Command-line front end: per-graph verdicts, threshold tables, discharging
//! and LP reports, and desk-scale choosability checks.
//!
//! [`run`] does all the work and returns the exit code together with the
//! text destined for stdout and stderr, so the binary is a thin wrapper.

mod commands;
mod input;
mod verdict;

use std::ffi::OsString;
use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use input::{load_graph, InputFormat};
pub use verdict::{theorem_verdict, Outcome, ThresholdValue, Verdict, VerdictError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{input}: {message}")]
    Input { input: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// An inclusive `Δ` range written `A..B`, or a single value `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaRange {
    pub start: usize,
    pub end: usize,
}

impl DeltaRange {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

impl FromStr for DeltaRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid delta range \"{s}\""))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty delta range \"{s}\""));
        }
        Ok(DeltaRange { start, end })
    }
}

impl fmt::Display for DeltaRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Parser)]
#[command(name = "madcert", version, about = "Certify list-edge-coloring bounds for sparse graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: GlobalOptions,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOptions {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Graph file format; by default taken from the file extension.
    #[arg(long, global = true, value_enum)]
    pub input_format: Option<InputFormat>,

    /// Worker threads for multi-input and Δ-range runs (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Maximum edge count for the exhaustive choosability search.
    #[arg(long, global = true, default_value_t = 6)]
    pub limit_edges: usize,

    /// Maximum list size for the exhaustive choosability search.
    #[arg(long, global = true, default_value_t = 4)]
    pub limit_k: usize,

    /// Maximum number of list assignments examined per search.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    pub limit_nodes: u64,

    /// Maximum edge count for exact (list) edge coloring.
    #[arg(long, global = true, default_value_t = madcert::choosability::DEFAULT_COLORING_EDGE_LIMIT)]
    pub limit_coloring_edges: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact maximum average degree with a densest-subgraph witness.
    Mad {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Table of thresholds m(Δ).
    Threshold {
        #[arg(long)]
        delta: DeltaRange,
    },
    /// Compare mad against the threshold for the graph's maximum degree.
    Verify {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Replay the discharging argument for each Δ in range.
    Discharge {
        #[arg(long)]
        delta: DeltaRange,
    },
    /// Solve the threshold LP for each Δ and check the closed-form certificate.
    Lp {
        #[arg(long)]
        delta: DeltaRange,
    },
    /// Chromatic index and list-chromatic index.
    Choosability {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Only search for a bad assignment with lists of this size.
        #[arg(long)]
        k: Option<usize>,
        /// Check colorability from a fixed list assignment ("u v : c1,c2" lines).
        #[arg(long)]
        lists: Option<String>,
    },
    /// Necessary conditions for list-edge-criticality.
    Filter {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
}

/// Exit status plus everything the process should print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Output {
                    code: EXIT_ERROR,
                    stdout: String::new(),
                    stderr: one_line(&e.to_string()),
                },
            };
        }
    };
    match commands::execute(&cli) {
        Ok(done) => Output {
            code: if done.passed { EXIT_OK } else { EXIT_CHECK_FAILED },
            stdout: done.stdout,
            stderr: String::new(),
        },
        Err(e) => Output {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("madcert: {e}\n"),
        },
    }
}

fn one_line(message: &str) -> String {
    let first = message
        .lines()
        .find(|l| !l.trim().is_empty())
        .unwrap_or("invalid arguments");
    format!("madcert: {}\n", first.trim_start_matches("error: "))
}
