//! The `hhs` command-line driver.  Every subcommand writes one versioned JSON
//! report and exits with 0 (pass), 1 (falsified, with a witness in the
//! report), 2 (partial: a budget or the window cut the search short) or 3
//! (malformed input).  The report layout is described by
//! `schema/report.schema.json`.

pub mod budgets;
mod commands;
pub mod error;
pub mod load;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use budgets::{RunBudgets, BUDGET_ENV};
pub use error::{CliError, Result};
use load::{ModelInfo, SubsetInfo};

pub const REPORT_FORMAT: &str = "hhs-report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Falsified,
    Partial,
    Malformed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Falsified => 1,
            Status::Partial => 2,
            Status::Malformed => 3,
        }
    }

    fn from_verdict(passes: bool, partial: bool) -> Status {
        match (passes, partial) {
            (false, _) => Status::Falsified,
            (true, true) => Status::Partial,
            (true, false) => Status::Pass,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Pretty,
    Compact,
}

#[derive(Debug, Parser)]
#[command(name = "hhs", version, about = "Audit hierarchical spaces, certify amalgams and test hierarchical quasiconvexity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Budget override `key=value[,key=value…]`, applied after the
    /// environment variable HHS_BUDGETS.
    #[arg(long = "budget", global = true)]
    pub budgets: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ModelArg {
    /// Model file written by `zoo build`, or any explicit model file.
    #[arg(long)]
    pub model: PathBuf,
}

#[derive(Debug, Args)]
pub struct AmalgamArgs {
    /// Twist exponent N of the factor generators; defaults to the model's.
    #[arg(long = "N")]
    pub n: Option<i64>,
    /// Scale constant M; defaults to N.
    #[arg(long = "M")]
    pub m: Option<u64>,
    /// Factor word length sampled by the hypothesis checks.
    #[arg(long, default_value_t = 2)]
    pub sample_radius: u64,
}

#[derive(Debug, Subcommand)]
pub enum ZooCommand {
    /// Build a zoo model, audit it and write the model file.
    Build {
        /// product_F2xDxD, product_F2xDxD_diagonal, product_F2, grid_Z2, parallel_lines or tree_free_group.
        family: String,
        /// Window radius.
        #[arg(long)]
        n: Option<usize>,
        /// Twist exponent of the product family's subgroups.
        #[arg(long = "N")]
        twist: Option<i64>,
        /// Where to write the model file.
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        skip_audit: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Zoo {
        #[command(subcommand)]
        action: ZooCommand,
    },
    /// Measure the least constant for every axiom.
    Audit(ModelArg),
    /// Certify that a word in A*B acts nontrivially.
    Certify {
        #[command(flatten)]
        model: ModelArg,
        /// Syllables such as `A B^-1 A^2`; `|` separates syllables of one factor.
        #[arg(long)]
        word: String,
        #[command(flatten)]
        amalgam: AmalgamArgs,
    },
    /// Check injectivity of A*B → G on every short syllable sequence.
    InjectVerify {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value_t = 4)]
        syllables: usize,
        /// Word length of factor elements.
        #[arg(long, default_value_t = 2)]
        radius: u64,
        #[command(flatten)]
        amalgam: AmalgamArgs,
    },
    /// Hierarchical quasiconvexity by realisation, optionally by hierarchy paths too.
    Hqc {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        subset: String,
        /// Coordinate tolerances for the realisation gauge, comma separated.
        #[arg(long, value_delimiter = ',')]
        tolerances: Vec<u32>,
        #[arg(long)]
        paths: bool,
        /// Path constants such as `1,3/2`.
        #[arg(long, value_delimiter = ',')]
        lambdas: Vec<String>,
    },
    FillSquares {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    NoDrift {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value = "A")]
        a: String,
        #[arg(long, default_value = "B")]
        b: String,
        #[command(flatten)]
        amalgam: AmalgamArgs,
    },
    Dichotomy {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        subset: String,
        /// Also report whether the dichotomy holds at these constants.
        #[arg(long, value_delimiter = ',')]
        theta: Vec<u32>,
    },
    /// Close a subset under hierarchy paths, then test the result.
    Hull {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        subset: String,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 2)]
        rounds: usize,
    },
    /// Every convexity verdict for A, B and A*B with the combination theorems.
    Combined {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value = "A")]
        a: String,
        #[arg(long, default_value = "B")]
        b: String,
        #[arg(long, default_value = "A*B")]
        product: String,
        #[command(flatten)]
        amalgam: AmalgamArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Zoo { .. } => "zoo build",
            Command::Audit(_) => "audit",
            Command::Certify { .. } => "certify",
            Command::InjectVerify { .. } => "inject-verify",
            Command::Hqc { .. } => "hqc",
            Command::FillSquares { .. } => "fill-squares",
            Command::NoDrift { .. } => "no-drift",
            Command::Dichotomy { .. } => "dichotomy",
            Command::Hull { .. } => "hull",
            Command::Combined { .. } => "combined",
        }
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    format: &'static str,
    version: u32,
    command: &'a str,
    status: Status,
    exit_code: i32,
    model: Option<&'a ModelInfo>,
    budgets: Option<&'a RunBudgets>,
    subsets: &'a [SubsetInfo],
    notes: &'a [String],
    error: Option<String>,
    result: Option<&'a T>,
}

/// Collects the report envelope while a command runs.
pub(crate) struct Context {
    command: &'static str,
    format: Format,
    budgets: Option<RunBudgets>,
    model: Option<ModelInfo>,
    subsets: Vec<SubsetInfo>,
    notes: Vec<String>,
}

/// A finished command: its status and the rendered report.
pub struct Execution {
    pub status: Status,
    pub report: String,
}

impl Context {
    fn render<T: Serialize>(&self, status: Status, error: Option<String>, result: Option<&T>) -> String {
        let r = Report {
            format: REPORT_FORMAT,
            version: REPORT_VERSION,
            command: self.command,
            status,
            exit_code: status.exit_code(),
            model: self.model.as_ref(),
            budgets: self.budgets.as_ref(),
            subsets: &self.subsets,
            notes: &self.notes,
            error,
            result,
        };
        let mut text = match self.format {
            Format::Pretty => serde_json::to_string_pretty(&r),
            Format::Compact => serde_json::to_string(&r),
        }
        .expect("reports serialise");
        text.push('\n');
        text
    }

    pub(crate) fn finish<T: Serialize>(&self, status: Status, result: &T) -> Execution {
        Execution { status, report: self.render(status, None, Some(result)) }
    }
}

/// Runs one parsed command.  Input errors become a malformed report.
pub fn execute(cli: Cli, budget_env: Option<&str>) -> Execution {
    let mut ctx = Context {
        command: cli.command.name(),
        format: cli.format,
        budgets: None,
        model: None,
        subsets: Vec::new(),
        notes: Vec::new(),
    };
    let outcome = RunBudgets::resolve(budget_env, &cli.budgets).and_then(|b| {
        ctx.budgets = Some(b);
        commands::dispatch(&mut ctx, cli.command)
    });
    match outcome {
        Ok(e) => e,
        Err(err) => Execution { status: Status::Malformed, report: ctx.render::<()>(Status::Malformed, Some(err.to_string()), None) },
    }
}

/// Parses arguments, runs the command and delivers the report to `--out` or
/// standard output.  Returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Status::Malformed.exit_code() } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = cli.out.clone();
    let env = std::env::var(BUDGET_ENV).ok();
    let done = execute(cli, env.as_deref());
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &done.report) {
                eprintln!("cannot write {}: {e}", path.display());
                return Status::Malformed.exit_code();
            }
        }
        None => print!("{}", done.report),
    }
    done.status.exit_code()
}
