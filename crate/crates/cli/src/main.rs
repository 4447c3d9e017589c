//! `gwzeta`: parity tables for the integer invariants of power-sum
//! sequences, elliptic-curve dlog zeta reports, descendibility checks, and
//! the verification suites.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gwzeta_cli::{cmd_curve, cmd_descend, cmd_profile, cmd_tables, run_suite, OutputFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "gwzeta",
    about = "Parity tables and dlog zeta reports for power-sum invariants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate the parity tables for all coefficient vectors in {0..3}^n.
    Tables {
        /// Degree of the coefficient vectors (1..=4).
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Analyze one coefficient vector: supports, period bounds, exact values.
    Profile {
        /// Comma-separated coefficients a1,a2,...,an.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<i64>,
        /// Also print the exact F and G values for m = 1..=24.
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Report on the elliptic curve Y^2 = X^3 + AX + B over F_p.
    Curve {
        /// An odd prime field characteristic.
        #[arg(long)]
        p: u64,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: i64,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: i64,
        /// Series truncation order (at least 12).
        #[arg(long = "K", default_value_t = 64)]
        k: usize,
    },
    /// Construct or check a descendible 2N-periodic parity function.
    Descend {
        /// Comma-separated support: inside [1,N] to construct the
        /// completion, or spread over [1,2N] to check a full pattern.
        /// Empty or {} for the empty support.
        #[arg(long, default_value = "")]
        supp: String,
        /// Half-period N.
        #[arg(long = "N")]
        n: u64,
    },
    /// Run a verification suite: congruences, oracle, periods, descend,
    /// tables, or zeta.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

fn parse_support(text: &str) -> Result<Vec<u64>, String> {
    let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if trimmed.is_empty() {
        return Ok(vec![]);
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad support element {:?}", part.trim()))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<(String, ExitCode), String> = match cli.command {
        Command::Tables { n, format } => {
            if n == 4 {
                eprintln!("note: n = 4 sweeps 256 coefficient vectors; expect a short wait");
            }
            cmd_tables(n, format.into()).map(|out| (out, ExitCode::SUCCESS))
        }
        Command::Profile { coeffs, exact, format } => {
            cmd_profile(&coeffs, exact, format.into()).map(|out| (out, ExitCode::SUCCESS))
        }
        Command::Curve { p, a, b, k } => {
            cmd_curve(p, a, b, k).map(|out| (out, ExitCode::SUCCESS))
        }
        Command::Descend { supp, n } => parse_support(&supp)
            .and_then(|s| cmd_descend(&s, n))
            .map(|out| (out, ExitCode::SUCCESS)),
        Command::Verify { suite } => run_suite(&suite).map(|run| {
            let code = if run.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
            (run.render(), code)
        }),
    };
    match result {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
