use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use littlewood_cli::{
    cmd_classify, cmd_norm, cmd_scan, cmd_verify_lemmas, parse_coeffs, parse_list, CoeffOrder,
    ExitCode, Failure, Outcome,
};
use littlewood_core::geometry::DEFAULT_MATCH_TOL;
use littlewood_core::{FormCoefficients, ScalarField, ScanConfig};

/// Operator norms, unit-ball geometry and Littlewood 4/3 ratios of bilinear
/// forms on the two-dimensional max-norm space.
#[derive(Parser)]
#[command(name = "littlewood", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Real,
    Complex,
}

impl From<Field> for ScalarField {
    fn from(f: Field) -> Self {
        match f {
            Field::Real => ScalarField::Real,
            Field::Complex => ScalarField::ComplexRealCoeffs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    /// a11,a21,a12,a22
    #[value(name = "column-major", alias = "default")]
    ColumnMajor,
    /// a11,a12,a21,a22
    #[value(alias = "row-major")]
    Matrix,
}

#[derive(clap::Args)]
struct Coeffs {
    /// Four comma-separated coefficients.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Order of the values given to --coeffs.
    #[arg(long, value_enum, default_value = "column-major")]
    order: Order,
}

#[derive(Subcommand)]
enum Command {
    /// Operator norm of one form.
    Norm {
        #[command(flatten)]
        coeffs: Coeffs,
        #[arg(long, value_enum, default_value = "real")]
        field: Field,
        /// Cross-check against the brute-force oracle; exits 4 if the gap exceeds 1e-6.
        #[arg(long)]
        oracle: bool,
    },
    /// Extreme / not extreme / outside the unit ball, with a split witness.
    Classify {
        #[command(flatten)]
        coeffs: Coeffs,
        /// Coefficientwise distance at which a form counts as an extreme point.
        #[arg(long, default_value_t = DEFAULT_MATCH_TOL)]
        tol: f64,
    },
    /// Littlewood ratio over a cubic grid.
    Scan {
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        /// Coefficient bounds `lo,hi` on every axis.
        #[arg(long = "box", default_value = "-1,1", allow_hyphen_values = true, value_parser = parse_box)]
        bounds: [f64; 2],
        #[arg(long, value_enum, default_value = "real")]
        field: Field,
        /// Write the full report here and print a summary.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one row per grid point here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Sample the supporting inequalities; exits 4 on a counterexample.
    VerifyLemmas {
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative band around each comparison treated as a tie and skipped.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn parse_box(s: &str) -> Result<[f64; 2], String> {
    parse_list::<2>(s)
}

impl Coeffs {
    fn parse(&self) -> Result<FormCoefficients, Failure> {
        let order = match self.order {
            Order::ColumnMajor => CoeffOrder::ColumnMajor,
            Order::Matrix => CoeffOrder::Matrix,
        };
        parse_coeffs(&self.coeffs, order).map_err(|message| Failure {
            code: ExitCode::Usage,
            message: format!("--coeffs: {message}"),
        })
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("LITTLEWOOD_THREADS") else {
        return Ok(());
    };
    let usage = |message: String| Failure {
        code: ExitCode::Usage,
        message,
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "LITTLEWOOD_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(e.to_string()))
}

fn dispatch(cli: Cli) -> Result<Outcome, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Norm {
            coeffs,
            field,
            oracle,
        } => Ok(cmd_norm(coeffs.parse()?, field.into(), oracle)),
        Command::Classify { coeffs, tol } => cmd_classify(coeffs.parse()?, tol),
        Command::Scan {
            step,
            bounds,
            field,
            out,
            csv,
        } => {
            let cfg = ScanConfig::new(step, field.into()).with_box(bounds[0], bounds[1]);
            cmd_scan(cfg, out.as_deref(), csv.as_deref())
        }
        Command::VerifyLemmas { samples, seed, tol } => cmd_verify_lemmas(samples, seed, tol),
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(outcome) => {
            println!("{}", outcome.stdout);
            if let Some(msg) = outcome.message {
                eprintln!("littlewood: {msg}");
            }
            process::exit(outcome.code as i32);
        }
        Err(failure) => {
            eprintln!("littlewood: {}", failure.message);
            process::exit(failure.code as i32);
        }
    }
}
