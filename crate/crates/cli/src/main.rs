//! `koopman-forge`: build, inspect and compare measure-preserving maps.
//!
//! Exit codes: 0 success, 2 invalid input, 3 resource limit exceeded.

mod commands;
mod inputs;
mod plot;

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use koopman_forge::koopman::DEFAULT_BASIS_LEVEL;
use koopman_forge::partition::{DEFAULT_MAX_LEVEL, MAX_LEVEL_ENV};
use koopman_forge::Limits;

#[derive(Parser, Debug)]
#[command(name = "koopman-forge", version, about = "Exact Koopman matrices and invertible realizations on [0,1)")]
struct Cli {
    /// Largest dyadic level any command may use
    #[arg(long, global = true, env = MAX_LEVEL_ENV, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Realize a doubly stochastic matrix as an invertible piecewise translation
    Realize {
        /// Matrix JSON file
        matrix: String,
        #[command(flatten)]
        output: Output,
    },
    /// Extract the dyadic Koopman matrix of a map
    Koopman {
        /// Map JSON file or built-in name (identity, halfswap, doubling, tent, rotation:p/q)
        map: String,
        #[arg(short = 'n', long, default_value_t = 1)]
        level: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Approximate a built-in non-invertible map by invertible realizations
    Approx {
        /// doubling or tent
        builtin: String,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        #[arg(long, default_value_t = DEFAULT_BASIS_LEVEL)]
        basis_level: u32,
        /// Write a static SVG plot of the metric against n
        #[arg(long)]
        plot: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Distance of a function from the range of a map's Koopman operator
    Rangedist {
        map: String,
        /// Step-function JSON file, or rademacher, one, dyadic:j:n, dyadic:L
        #[arg(long, default_value = "rademacher")]
        function: String,
        #[command(flatten)]
        output: Output,
    },
    /// Truncated strong-operator metric between two maps
    Metric {
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_BASIS_LEVEL)]
        basis_level: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug, Clone)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the JSON result here
    #[arg(long)]
    out: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<koopman_forge::Error> for CliError {
    fn from(e: koopman_forge::Error) -> CliError {
        let code = if e.is_resource_limit() { 3 } else { 2 };
        CliError { code, message: e.to_string() }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let limits = Limits::with_max_level(cli.max_level);
    match cli.command {
        Command::Realize { matrix, output } => commands::realize(&matrix, &limits, &output),
        Command::Koopman { map, level, output } => commands::koopman(&map, level, &limits, &output),
        Command::Approx { builtin, n_max, basis_level, plot, output } => {
            commands::approx(&builtin, n_max, basis_level, plot.as_deref(), &limits, &output)
        }
        Command::Rangedist { map, function, output } => commands::rangedist(&map, &function, &output),
        Command::Metric { a, b, basis_level, output } => commands::metric(&a, &b, basis_level, &limits, &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
