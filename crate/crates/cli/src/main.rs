use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use twodist::SearchConfig;

mod commands;
mod output;

use commands::{Outcome, Settings};
use output::{Format, OutputConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Delsarte LP bounds for spherical two-distance sets.
#[derive(Debug, Parser)]
#[command(name = "twodist", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Significant digits for real-valued output.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Sign tolerance for the Gegenbauer coefficient checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Grid points for the supremum search over each interval.
    #[arg(long, global = true, default_value_t = 20001)]
    grid: usize,

    /// Seed for the random sample points of the rank check.
    #[arg(long, global = true, default_value_t = twodist::DEFAULT_SEED)]
    seed: u64,

    /// Exit with status 3 when an infinite (inconclusive) bound is encountered.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound table: omega_hat(n), rho(n), k*, and the resulting upper bound on g(n).
    Table {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Samples of Q_k^{(n)}(a) across the closed interval I_k.
    Profile {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
    },
    /// Report all five candidate bounds for one pair of inner products.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
    /// Check a Gegenbauer expansion against the Delsarte LP conditions.
    DelsarteCheck {
        #[arg(long)]
        n: usize,
        /// Gegenbauer coefficients f_0, f_1, ... (comma separated).
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coeffs: Vec<f64>,
        /// Allowed inner products (comma separated).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        allowed: Vec<f64>,
    },
    /// Build the simplex edge-midpoint set and verify its two-distance structure.
    VerifyLambda {
        #[arg(long)]
        n: usize,
    },
    /// Numerical rank of the kernel and coordinate functions on the edge-midpoint set.
    Independence {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(EXIT_VERIFICATION),
        Ok(Outcome::Inconclusive) => ExitCode::from(EXIT_INCONCLUSIVE),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        anyhow::bail!("--tol must be a nonnegative number");
    }
    if cli.grid < 2 {
        anyhow::bail!("--grid must be at least 2");
    }
    let settings = Settings {
        search: SearchConfig {
            grid: cli.grid,
            tol: cli.tol,
            ..SearchConfig::default()
        },
        seed: cli.seed,
        strict: cli.strict,
    };
    let result = match cli.command {
        Command::Table { n_min, n_max } => commands::cmd_table(&settings, n_min, n_max),
        Command::Profile { n, k, samples } => commands::cmd_profile(&settings, n, k, samples),
        Command::Bound { n, a, b } => commands::cmd_bound(&settings, n, a, b),
        Command::DelsarteCheck { n, coeffs, allowed } => {
            commands::cmd_delsarte_check(&settings, n, coeffs, allowed)
        }
        Command::VerifyLambda { n } => commands::cmd_verify_lambda(&settings, n),
        Command::Independence { n } => commands::cmd_independence(&settings, n),
    };
    let (mut report, outcome) = result?;
    report.meta.push(("precision", cli.precision.to_string()));
    let cfg = OutputConfig {
        format: cli.format,
        precision: cli.precision as usize,
    };
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    report.render(&cfg, &mut sink)?;
    sink.flush()?;
    Ok(outcome)
}
