//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit codes: `0` success, `2` invalid input or usage, `3` a well-posed
//! computation that could not finish (precision ceiling, support outside
//! `Q(i)`, unbalanced divisor, state space bound) or a failed golden check.

mod commands;
mod golden;
mod render;

use std::ffi::OsString;

use arithpoints_core::Error;
use clap::{Parser, Subcommand};
use serde_json::Value;

/// Environment variable overriding the series precision ceiling.
pub const PRECISION_ENV: &str = "ARITHPOINTS_PRECISION_CEILING";

#[derive(Parser, Debug)]
#[command(name = "arithpoints", version, about = "Exact computations on square-tiled surfaces, strata and superelliptic curves")]
struct Cli {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Square-tiled surfaces.
    #[command(subcommand)]
    Origami(commands::OrigamiCmd),
    /// Isogeny composition and branched covers.
    #[command(subcommand)]
    Cover(commands::CoverCmd),
    /// Strata of abelian differentials.
    #[command(subcommand)]
    Strata(commands::StrataCmd),
    /// Highest-weight orbit dimensions.
    #[command(subcommand)]
    Satake(commands::SatakeCmd),
    /// Superelliptic curves `y^m = f(x)`.
    #[command(subcommand)]
    Curve(commands::CurveCmd),
    /// Replays worked computations against built-in expected values.
    #[command(subcommand)]
    Examples(golden::ExampleCmd),
}

/// Failure of a subcommand, split by exit code.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Computation(e.to_string())
        }
    }
}

pub(crate) type CmdResult = Result<Value, Failure>;

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandResult { exit_code: 0, stdout: text, stderr: String::new() }
            } else {
                CommandResult { exit_code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let ceiling = match precision_ceiling() {
        Ok(c) => c,
        Err(msg) => return CommandResult { exit_code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    };
    let outcome = match cli.command {
        Command::Origami(c) => commands::origami(c),
        Command::Cover(c) => commands::cover(c),
        Command::Strata(c) => commands::strata(c),
        Command::Satake(c) => commands::satake(c),
        Command::Curve(c) => commands::curve(c, ceiling),
        Command::Examples(c) => golden::run(c, ceiling),
    };
    match outcome {
        Ok(v) => {
            let failed = golden::has_failures(&v);
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
            } else if golden::is_report(&v) {
                golden::text(&v)
            } else {
                render::text(&v)
            };
            CommandResult { exit_code: if failed { 3 } else { 0 }, stdout, stderr: String::new() }
        }
        Err(Failure::Validation(msg)) => {
            CommandResult { exit_code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Computation(msg)) => {
            CommandResult { exit_code: 3, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

fn precision_ceiling() -> Result<Option<usize>, String> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{PRECISION_ENV} must be a positive decimal integer, got {s:?}")),
        },
    }
}
