use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use su3exp::expsu3::DEFAULT_RODRIGUES_DET_TOL;
use su3exp::linalg3::DEFAULT_VALIDATION_TOL;
use su3exp::spectral::DEFAULT_DEGENERACY_THRESHOLD;
use su3exp::EvalConfig;
use su3exp_cli::document::to_json_line;
use su3exp_cli::error::{EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
use su3exp_cli::{
    cmd_bench, cmd_cayley, cmd_compute, cmd_resolvent, cmd_verify, BenchFormat, CliError, MatrixDocument, MethodArg,
    VerifyOptions,
};

/// Closed-form SU(3) exponentials, resolvents and Cayley transforms.
#[derive(Parser, Debug)]
#[command(name = "su3exp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Thresholds {
    /// Hermiticity/trace validation tolerance.
    #[arg(long, default_value_t = DEFAULT_VALIDATION_TOL, allow_negative_numbers = true)]
    tol: f64,
    /// Eigenvalue gap below which two eigenvalues are merged.
    #[arg(long, default_value_t = DEFAULT_DEGENERACY_THRESHOLD, allow_negative_numbers = true)]
    delta: f64,
}

impl Thresholds {
    fn config(&self) -> Result<EvalConfig, CliError> {
        for (name, v) in [("--tol", self.tol), ("--delta", self.delta)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::usage(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(EvalConfig {
            delta: self.delta,
            det_tol: DEFAULT_RODRIGUES_DET_TOL,
            validation_tol: self.tol,
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// exp(iθH) for the generator in the input document.
    Compute {
        /// Input document; standard input when absent or "-".
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
        /// Also evaluate the series oracle and report the deviation.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        thresholds: Thresholds,
    },
    /// (I − isH)⁻¹ for the generator and s in the input document.
    Resolvent {
        input: Option<PathBuf>,
        #[command(flatten)]
        thresholds: Thresholds,
    },
    /// (I + isH)(I − isH)⁻¹ for the generator and s in the input document.
    Cayley {
        input: Option<PathBuf>,
        #[command(flatten)]
        thresholds: Thresholds,
    },
    /// Check all invariants over a seeded random ensemble.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[command(flatten)]
        thresholds: Thresholds,
    },
    /// Time the closed form against the series oracle.
    Bench {
        #[arg(long, default_value_t = 10_000)]
        count: u64,
        #[arg(long, default_value_t = 5)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BenchFormat::Table)]
        format: BenchFormat,
    },
}

fn read_document(input: &Option<PathBuf>) -> Result<MatrixDocument, CliError> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::input("IoError", format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::input("IoError", e.to_string()))?;
            s
        }
    };
    MatrixDocument::parse(&text)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Compute {
            input,
            method,
            check,
            thresholds,
        } => {
            let config = thresholds.config()?;
            let out = cmd_compute(&read_document(&input)?, method, check, &config)?;
            println!("{}", to_json_line(&out));
        }
        Command::Resolvent { input, thresholds } => {
            let out = cmd_resolvent(&read_document(&input)?, &thresholds.config()?)?;
            println!("{}", to_json_line(&out));
        }
        Command::Cayley { input, thresholds } => {
            let out = cmd_cayley(&read_document(&input)?, &thresholds.config()?)?;
            println!("{}", to_json_line(&out));
        }
        Command::Verify {
            seed,
            count,
            thresholds,
        } => {
            let report = cmd_verify(&VerifyOptions {
                seed,
                count,
                config: thresholds.config()?,
            })?;
            print!("{}", report.table());
            if !report.passed() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Bench {
            count,
            reps,
            seed,
            format,
        } => {
            print!("{}", cmd_bench(count, reps, seed)?.render(format));
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("invalid usage")
                .trim_start_matches("error: ");
            println!("{}", to_json_line(&CliError::usage(first)));
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            println!("{}", to_json_line(&e));
            ExitCode::from(e.exit_code as u8)
        }
    }
}
