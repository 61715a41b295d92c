use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use commands::{CliError, Function};
use output::{Record, Status};

/// Generalized p-trigonometric functions and the limit of
/// q^(1/p) ∫_0^∞ |sinc_p x|^q dx.
///
/// Exit status: 0 on success, 1 when a check fails or a tolerance is
/// missed, 2 on usage errors.
#[derive(Debug, Parser)]
#[command(name = "pball", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function. Columns: function, p, x, value.
    Eval {
        function: Function,
        #[arg(long)]
        p: f64,
        /// Argument (not used by pip).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
    },
    /// ∫_0^∞ (ln|sinc_p|)^n |sinc_p|^q. Columns: p, q, n, raw, scaled
    /// (raw times q^(n + 1/p)), err_est, tail_remainder, subdivisions.
    Integral {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Absolute tolerance on the raw integral.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Convergence of I_p(q) to its limit. Columns: q, I_p, L_p, gap,
    /// gap_q (gap times q), g_1 (predicted limit of gap_q).
    LimitTable {
        #[arg(long)]
        p: f64,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
        q_list: Vec<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Asymptotic expansion Σ g_m/q^m against quadrature. Columns: m, g_m,
    /// partial_sum, reference, residual.
    Expand {
        #[arg(long)]
        p: f64,
        /// Highest m, at most 6.
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run an inequality or identity suite. Columns: check, grid, points,
    /// max_slack, violations, first_violation, status.
    Verify {
        /// jordan, bhayo, beta, gamma-ratio, tail, monotonic, pythagorean,
        /// symmetry or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// q^(n + 1/p) φ_p(n, q) against the stated and the derivative
    /// constants. Columns: q, phi, scaled, stated, derivative.
    PhiLimit {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
        q_list: Vec<f64>,
        /// Accuracy of each φ relative to its expected size.
        #[arg(long, default_value_t = 1e-9)]
        rel_tol: f64,
    },
}

fn run(cmd: Command) -> Result<Record, CliError> {
    match cmd {
        Command::Eval { function, p, x } => commands::eval(function, p, x),
        Command::Integral { p, q, n, tol } => commands::integral(p, q, n, tol),
        Command::LimitTable { p, q_list, tol } => commands::limit_table(p, &q_list, tol),
        Command::Expand { p, order, q, tol } => commands::expand(p, order, q, tol),
        Command::Verify { suite, p, samples } => commands::verify(&suite, p, samples),
        Command::PhiLimit {
            p,
            n,
            q_list,
            rel_tol,
        } => commands::phi_limit(p, n, &q_list, rel_tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let record = match run(cli.command) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let stdout = io::stdout().lock();
    let written = match cli.format {
        Format::Csv => record.write_csv(stdout).map_err(|e| e.to_string()),
        Format::Json => record.write_json(stdout).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(io::stderr(), "error: {e}");
        return ExitCode::from(1);
    }
    match record.status {
        Status::Fail => ExitCode::from(1),
        Status::Pass | Status::Info => ExitCode::SUCCESS,
    }
}
