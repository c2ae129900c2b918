//! Command-line front end: reference tables, delay sweeps, delay-rate
//! tradeoff curves, and Monte Carlo comparison against the exact analysis.

mod commands;
mod config;
mod output;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{parse_grid, parse_sizes, parse_tuple_list, RunConfig};
use output::Format;

/// Exit codes: 1 usage, 2 validation failure, 3 statistical rejection.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Statistical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => 1,
            Self::Validation(_) => 2,
            Self::Statistical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Usage(m) | Self::Validation(m) | Self::Statistical(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ergodic-align",
    version,
    about = "Delay-rate analysis of ergodic interference alignment with multi-size alignment sets"
)]
struct Cli {
    /// JSON config file with parameter defaults; explicit flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output encoding.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Absorption probabilities and normalized delays per scheme, with the
    /// delay evaluated by every analytic route and cross-checked.
    Table {
        /// Semicolon-separated schemes, e.g. "2,4;2,6" (defaults to the
        /// nine shipped reference tuples).
        #[arg(long)]
        tuples: Option<String>,
        /// Alphabet cardinality.
        #[arg(long)]
        n: Option<u64>,
        /// Report delays in steps instead of units of the cardinality.
        #[arg(long)]
        absolute: bool,
    },
    /// Normalized delay of 1..max-n disjoint same-size sets.
    Sweep {
        /// Alignment set size (even, >= 2).
        #[arg(long)]
        size: Option<u32>,
        /// Largest number of sets to evaluate.
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        absolute: bool,
    },
    /// Delay-rate tradeoff curve for time-sharing between two schemes.
    Tradeoff {
        /// Comma-separated weights on the second scheme, e.g. "0,0.5,1".
        #[arg(long = "alpha-grid")]
        alpha_grid: Option<String>,
        /// The two schemes, e.g. "2;2,4".
        #[arg(long)]
        tuples: Option<String>,
        /// Per-user SNR: one value for all users or a comma list.
        #[arg(long)]
        snr: Option<String>,
        /// User count when --snr is a single value.
        #[arg(long)]
        users: Option<usize>,
        /// Fade sample CSV (columns re,im[,weight]); defaults to the
        /// two-point unit set.
        #[arg(long)]
        fades: Option<PathBuf>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        absolute: bool,
    },
    /// Monte Carlo race against the exact chain, with z-scores.
    Simulate {
        /// Scheme to simulate, e.g. "2,4"; repeatable.
        #[arg(long = "tuple")]
        tuple: Vec<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        absolute: bool,
    },
    /// Run the full invariant suite and report one line per check.
    Validate {
        /// Trials for the statistical concordance check.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version exit cleanly; anything else is a usage error.
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let defaults = RunConfig::load(cli.config.as_ref())?;
    let format = cli
        .format
        .or(match defaults.format.as_deref() {
            Some("csv") => Some(Format::Csv),
            Some("json") => Some(Format::Json),
            _ => None,
        })
        .unwrap_or(Format::Csv);
    let out = cli.out.or_else(|| defaults.out.clone());

    match cli.command {
        Command::Table {
            tuples,
            n,
            absolute,
        } => {
            let tuples = match tuples {
                Some(text) => parse_tuple_list(&text)?,
                None => defaults.tuples.clone().unwrap_or_else(|| {
                    ergodic_align::DEFAULT_TUPLES
                        .iter()
                        .map(|s| s.to_vec())
                        .collect()
                }),
            };
            if tuples.is_empty() {
                return Err(CliError::Usage("no schemes given".into()));
            }
            let n = n.or(defaults.n).unwrap_or(64);
            let absolute = absolute || defaults.absolute.unwrap_or(false);
            commands::cmd_table(&tuples, n, absolute, format, out.as_ref())
        }
        Command::Sweep {
            size,
            max_n,
            n,
            absolute,
        } => {
            let size = size
                .or(defaults.size)
                .ok_or_else(|| CliError::Usage("--size is required".into()))?;
            let max_n = max_n
                .or(defaults.max_n)
                .ok_or_else(|| CliError::Usage("--max-n is required".into()))?;
            let n = n.or(defaults.n).unwrap_or(64);
            let absolute = absolute || defaults.absolute.unwrap_or(false);
            commands::cmd_sweep(size, max_n, n, absolute, format, out.as_ref())
        }
        Command::Tradeoff {
            alpha_grid,
            tuples,
            snr,
            users,
            fades,
            n,
            absolute,
        } => {
            let tuples = match tuples {
                Some(text) => parse_tuple_list(&text)?,
                None => defaults
                    .tuples
                    .clone()
                    .unwrap_or_else(|| vec![vec![2], vec![2, 4]]),
            };
            let alpha_grid = match alpha_grid {
                Some(text) => parse_grid(&text)?,
                None => defaults
                    .alpha_grid
                    .clone()
                    .unwrap_or_else(|| (0..=10).map(|i| i as f64 / 10.0).collect()),
            };
            let users = users.or(defaults.users).unwrap_or(3);
            let snr = match snr {
                Some(text) => {
                    let values = parse_grid(&text)?;
                    if values.iter().any(|&s| s < 0.0) {
                        return Err(CliError::Usage("SNR values must be nonnegative".into()));
                    }
                    if values.len() == 1 {
                        vec![values[0]; users]
                    } else {
                        values
                    }
                }
                None => defaults.snr.clone().unwrap_or_else(|| vec![1.0; users]),
            };
            let params = commands::TradeoffParams {
                tuples,
                alpha_grid,
                n: n.or(defaults.n).unwrap_or(64),
                snr,
                fades: fades.or_else(|| defaults.fades.clone()),
                absolute: absolute || defaults.absolute.unwrap_or(false),
            };
            commands::cmd_tradeoff(&params, format, out.as_ref())
        }
        Command::Simulate {
            tuple,
            n,
            trials,
            seed,
            absolute,
        } => {
            let tuples: Vec<Vec<u32>> = if tuple.is_empty() {
                defaults
                    .tuples
                    .clone()
                    .ok_or_else(|| CliError::Usage("pass at least one --tuple".into()))?
            } else {
                tuple
                    .iter()
                    .map(|t| parse_sizes(t))
                    .collect::<Result<_, _>>()?
            };
            let params = commands::SimulateParams {
                tuples,
                n: n.or(defaults.n).unwrap_or(64),
                trials: trials.or(defaults.trials).unwrap_or(1_000_000),
                seed: seed.or(defaults.seed).unwrap_or(42),
                absolute: absolute || defaults.absolute.unwrap_or(false),
            };
            commands::cmd_simulate(&params, format, out.as_ref())
        }
        Command::Validate { trials, seed } => {
            let trials = trials.or(defaults.trials).unwrap_or(200_000);
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            validate::cmd_validate(trials, seed.or(defaults.seed).unwrap_or(42))
        }
    }
}
