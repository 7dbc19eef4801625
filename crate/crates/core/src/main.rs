use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use pde_series::corpus;
use pde_series::problem::ProblemSpec;
use pde_series::report::{self, RunError, SolveOptions};

/// Exact power-series solutions of heat- and wave-like PDEs.
#[derive(Parser)]
#[command(name = "pdeseries", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the series coefficients u_0..u_N.
    Solve {
        /// Problem file, or a built-in id such as `example1`.
        file: String,
        #[arg(long)]
        order: Option<usize>,
        /// Also identify the closed form.
        #[arg(long)]
        recognize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare homotopy-perturbation iterates with the series.
    HpmCheck {
        file: String,
        #[arg(long)]
        terms: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the truncated series at a point.
    Eval {
        file: String,
        /// Spatial point, e.g. `x=1,y=1/2`.
        #[arg(long)]
        at: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run every built-in example end to end.
    Corpus {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

const EXIT_VERIFICATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn load(file: &str) -> Result<(String, ProblemSpec), RunError> {
    if !Path::new(file).exists() {
        if let Some(entry) = corpus::entry(file) {
            return Ok((file.to_string(), entry?.spec));
        }
    }
    Ok((file.to_string(), ProblemSpec::load(file)?))
}

/// Write failures such as a closed pipe are ignored: the run itself is over.
fn emit<T: Serialize + std::fmt::Display>(report: &T, json: bool) {
    let mut out = std::io::stdout().lock();
    let _ = if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        )
    } else {
        writeln!(out, "{report}")
    };
}

fn run(cli: Cli) -> Result<bool, RunError> {
    match cli.command {
        Command::Solve {
            file,
            order,
            recognize,
            json,
        } => {
            let (name, spec) = load(&file)?;
            let r = report::run_solve(&name, &spec, SolveOptions { order, recognize })?;
            emit(&r, json);
            Ok(true)
        }
        Command::HpmCheck { file, terms, json } => {
            let (name, spec) = load(&file)?;
            let r = report::run_hpm_check(&name, &spec, terms)?;
            emit(&r, json);
            Ok(r.equal && r.per_term_match)
        }
        Command::Eval {
            file,
            at,
            t,
            order,
            json,
        } => {
            let (name, spec) = load(&file)?;
            let point = report::parse_point(&at, &spec.vars)?;
            let t = report::parse_number(&t)
                .ok_or_else(|| RunError::Input(format!("`{t}` is not a number")))?;
            let r = report::run_eval(&name, &spec, &point, &t, order)?;
            emit(&r, json);
            Ok(true)
        }
        Command::Corpus { order, json } => {
            let entries = corpus::entries()?;
            let r = report::run_corpus(&entries, order)?;
            emit(&r, json);
            Ok(r.all_pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFICATION),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
