use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sphdisc::bounds::{bound_report, BoundReport};
use sphdisc::error::Error;
use sphdisc::geometry::Exponent;
use sphdisc::harness::{
    auto_config, run_sweep, verify_theorem3, ExperimentRecord, Generator, DEFAULT_SAMPLES,
};
use sphdisc::io::read_matrix_file;
use sphdisc::solver::{
    exact_dual_vertex, projected_subgradient, sampled_oracle, smoothed_lse, Method, SolveResult,
};

/// Spherical discrepancy bounds and solvers.
#[derive(Parser)]
#[command(name = "sphdisc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the bound report (determinant chain and volume-ratio bounds)
    /// for a matrix file.
    Bound {
        /// Matrix file: first line n, then n rows of n reals.
        #[arg(long)]
        input: PathBuf,
        /// Source ball exponent in [1, inf].
        #[arg(long, default_value = "2")]
        p: String,
        /// Target ball exponent in [1, inf].
        #[arg(long, default_value = "inf")]
        q: String,
    },
    /// Minimize ||Wx||_inf over the unit sphere for a matrix file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// exact | subgradient | smoothed | sampled
        #[arg(long)]
        method: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restart count for the iterative methods.
        #[arg(long)]
        restarts: Option<usize>,
        /// Iteration budget (sample count for `sampled`).
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
    },
    /// Run the scaling verification experiment; CSV rows to stdout.
    Verify {
        /// Comma-separated dimensions, e.g. --n 2,4,8.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// exact | subgradient | smoothed | sampled
        #[arg(long)]
        method: String,
    },
    /// Sweep a geometric dimension grid; CSV to a file, summary to stdout.
    Sweep {
        #[arg(long = "n-min")]
        n_min: usize,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value = "random_mean_norm")]
        generator: String,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Bound { input, p, q } => {
            let w = read_matrix_file(&input)?;
            let p: Exponent = p.parse()?;
            let q: Exponent = q.parse()?;
            let report = bound_report(&w, p, q)?;
            println!("{}", BoundReport::CSV_HEADER);
            println!("{}", report.to_csv_row());
        }
        Command::Solve {
            input,
            method,
            seed,
            restarts,
            max_iter,
        } => {
            let w = read_matrix_file(&input)?;
            let method: Method = method.parse()?;
            let result = match method {
                Method::ExactDualVertex => exact_dual_vertex(&w)?,
                Method::Sampled => sampled_oracle(&w, max_iter.unwrap_or(DEFAULT_SAMPLES), seed),
                Method::ProjectedSubgradient | Method::SmoothedLse => {
                    let mut cfg = auto_config(method, w.n(), seed);
                    if let Some(r) = restarts {
                        cfg.restarts = r;
                    }
                    if let Some(m) = max_iter {
                        cfg.max_iterations = m;
                    }
                    if method == Method::ProjectedSubgradient {
                        projected_subgradient(&w, &cfg)
                    } else {
                        smoothed_lse(&w, &cfg)
                    }
                }
            };
            println!("{}", SolveResult::CSV_HEADER);
            println!("{}", result.to_csv_row());
        }
        Command::Verify {
            n,
            trials,
            seed,
            method,
        } => {
            let method: Method = method.parse()?;
            let records = verify_theorem3(&n, trials, seed, method)?;
            println!("{}", ExperimentRecord::CSV_HEADER);
            for r in &records {
                println!("{}", r.to_csv_row());
            }
        }
        Command::Sweep {
            n_min,
            n_max,
            points,
            trials,
            seed,
            output,
            generator,
        } => {
            let generator: Generator = generator.parse()?;
            let summary = run_sweep(n_min, n_max, points, trials, seed, &output, generator)?;
            println!("{summary}");
        }
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::SingularMatrix { .. } => 3,
        Error::DimensionTooLarge { .. } => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
