//! Command-line front end: parameter tables, code construction, section
//! analysis, LPU factorization, and a one-shot verification harness.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or domain error,
//! 3 infeasible request. The environment variable `GLCODE_BUDGET` overrides
//! the default column budget for code builds. All numeric output is decimal.

mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use glcode::code::{weight_distribution, DEFAULT_BUDGET};
use glcode::formulas::{code_params, griesmer_defect, singleton_defect, stanley_f};
use glcode::sections::partial_trace_count;
use glcode::{bruhat, Error, FieldCtx, Mat};

#[derive(Parser)]
#[command(
    name = "glcode",
    version,
    about = "Evaluation codes on the invertible matrices over a finite field"
)]
struct Cli {
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Worker threads for enumeration subcommands (default: all cores).
    /// Results are identical for any worker count.
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Exact code parameters and bound defects as JSON.
    Params {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// CSV table of parameters and defects for a range of (n, q).
    Table {
        #[arg(long, value_name = "N")]
        n_max: usize,
        /// Comma-separated list of field orders.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
    },
    /// Run the invariant suites and print a report table.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "fast")]
        level: Level,
    },
    /// Generator matrix, one row per line, symbols space-separated.
    GenMatrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Override the defining polynomial (coefficients, low degree first).
        #[arg(long, value_delimiter = ',')]
        poly: Option<Vec<u32>>,
    },
    /// Weight distribution as CSV (weight,count).
    Weights {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',')]
        poly: Option<Vec<u32>>,
    },
    /// Partial-trace section counts: formula vs brute force, as CSV.
    Sections {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',')]
        poly: Option<Vec<u32>>,
    },
    /// LPU factorization of a matrix, as JSON.
    Bruhat {
        #[arg(long)]
        q: u64,
        /// Matrix in text form, e.g. "0,1;1,0".
        #[arg(long)]
        matrix: String,
        #[arg(long, value_delimiter = ',')]
        poly: Option<Vec<u32>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if workers < 1 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        };
        pool.install(|| dispatch(&cli))
    } else {
        dispatch(&cli)
    }
}

fn dispatch(cli: &Cli) -> ExitCode {
    match run(&cli.command) {
        Ok((output, code)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &output).map_err(|e| e.to_string()),
                None => {
                    print!("{output}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Infeasible(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn budget_from_env() -> u64 {
    std::env::var("GLCODE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

fn field_with_optional_poly(q: u64, poly: &Option<Vec<u32>>) -> glcode::Result<std::sync::Arc<FieldCtx>> {
    match poly {
        Some(coeffs) => FieldCtx::with_modulus(q, coeffs),
        None => FieldCtx::new(q),
    }
}

fn run(command: &Command) -> glcode::Result<(String, ExitCode)> {
    match command {
        Command::Params { n, q } => Ok((params_json(*n, *q)?, ExitCode::SUCCESS)),
        Command::Table { n_max, q } => {
            if q.is_empty() {
                return Err(Error::OutOfRange("the q list must not be empty"));
            }
            let mut out = String::from(
                "n,q,length,dimension,min_distance,singleton_defect,griesmer_defect\n",
            );
            for n in 2..=*n_max {
                for &q in q {
                    let p = code_params(n, q)?;
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        n,
                        q,
                        p.length,
                        p.dimension,
                        p.min_distance,
                        singleton_defect(&p),
                        griesmer_defect(&p)
                    ));
                }
            }
            Ok((out, ExitCode::SUCCESS))
        }
        Command::Verify { n, q, level } => {
            let report = verify::run(*n, *q, *level == Level::Full, budget_from_env())?;
            let code = if report.failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) };
            Ok((report.text, code))
        }
        Command::GenMatrix { n, q, poly } => {
            let ctx = field_with_optional_poly(*q, poly)?;
            let code = build_with_ctx(*n, &ctx)?;
            Ok((format!("{}\n", code.generator_text()), ExitCode::SUCCESS))
        }
        Command::Weights { n, q, poly } => {
            let ctx = field_with_optional_poly(*q, poly)?;
            let code = build_with_ctx(*n, &ctx)?;
            let wd = weight_distribution(&code)?;
            let mut out = String::from("weight,count\n");
            for (w, c) in wd.counts() {
                out.push_str(&format!("{w},{c}\n"));
            }
            Ok((out, ExitCode::SUCCESS))
        }
        Command::Sections { n, q, poly } => {
            if *n < 1 {
                return Err(Error::OutOfRange("sections need n >= 1"));
            }
            // The defining polynomial does not change the counts; accept it
            // for interface uniformity.
            let _ = field_with_optional_poly(*q, poly)?;
            let mut out = String::from("k,f_k_formula,f_k_bruteforce,match\n");
            for k in 1..=*n {
                let formula = stanley_f(k, *n, *q)?;
                let brute = partial_trace_count(k, *n, *q)?;
                out.push_str(&format!(
                    "{k},{formula},{brute},{}\n",
                    if formula == brute { "true" } else { "false" }
                ));
            }
            Ok((out, ExitCode::SUCCESS))
        }
        Command::Bruhat { q, matrix, poly } => {
            let ctx = field_with_optional_poly(*q, poly)?;
            let mat = Mat::parse(&ctx, matrix)?;
            let f = bruhat::bruhat_decompose(&mat)?;
            let w: Vec<String> = f.perm.one_line().iter().map(|v| v.to_string()).collect();
            Ok((
                format!(
                    "{{\"w\":[{}],\"L\":\"{}\",\"U\":\"{}\"}}\n",
                    w.join(","),
                    f.lower.to_text(),
                    f.upper.to_text()
                ),
                ExitCode::SUCCESS,
            ))
        }
    }
}

fn build_with_ctx(
    n: usize,
    ctx: &std::sync::Arc<FieldCtx>,
) -> glcode::Result<glcode::EvaluationCode> {
    glcode::code::build_code_with_ctx(n, ctx, budget_from_env())
}

fn params_json(n: usize, q: u64) -> glcode::Result<String> {
    let p = code_params(n, q)?;
    Ok(format!(
        "{{\"n\":{},\"q\":{},\"length\":{},\"dimension\":{},\"min_distance\":{},\"singleton_defect\":{},\"griesmer_defect\":{}}}\n",
        n,
        q,
        p.length,
        p.dimension,
        p.min_distance,
        singleton_defect(&p),
        griesmer_defect(&p)
    ))
}
