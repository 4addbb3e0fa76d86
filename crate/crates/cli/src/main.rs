//! `gla`: run verification suites, cohomology tables and bracket expressions.

mod algebra;
mod eval;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gla_core::cohomology::{adjoint_complex, cyclic_complex, trivial_complex, two_k_complex, BettiTable};
use serde_json::{json, Value};

use crate::algebra::{load, Loaded};
use crate::eval::{evaluate, parse, Env, Val};
use crate::report::RunReport;
use crate::suites::{run, suite, Ctx, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "gla", version, about = "Exact computations with graded Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Builtin name (gl2, gl3, sl2, sl3, elem4, elem5, elem6, abelian<n>) or JSON file.
    #[arg(long, global = true)]
    algebra: Option<String>,

    /// Dimension for suites and expressions that work on a bare vector space.
    #[arg(long, global = true)]
    n: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Highest cohomological degree to report.
    #[arg(long, global = true)]
    max_degree: Option<usize>,

    /// Highest cochain arity for the adjoint and cyclic complexes.
    #[arg(long, global = true)]
    max_arity: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Include the wall-clock duration in verification reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a named verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
    /// Betti table of a complex: trivial, adjoint, cyclic or twoK:<expression>.
    Cohomology { algebra: String, complex: String },
    /// Evaluate a bracket or product expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expression: String,
    },
}

/// A usage or input error (exit 2), as opposed to a failed check (exit 1).
struct UsageError(String);

impl<T: Into<String>> From<T> for UsageError {
    fn from(s: T) -> Self {
        UsageError(s.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((text, passed)) => match emit(&cli, &text) {
            Ok(()) if passed => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(UsageError(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(cli: &Cli, json: &Value, text: String) -> String {
    match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(json).expect("serializable")),
        Format::Text => text,
    }
}

fn dispatch(cli: &Cli) -> Result<(String, bool), UsageError> {
    match &cli.command {
        Command::Verify { suite } => verify(cli, suite),
        Command::Cohomology { algebra, complex } => {
            let loaded = load(algebra)?;
            let table = cohomology(cli, &loaded, complex)?;
            let mut json = table.to_json();
            json["algebra"] = json!(loaded.name);
            let text = format!("algebra {}\n{}", loaded.name, table.to_text());
            Ok((render(cli, &json, text), true))
        }
        Command::Eval { expression } => {
            let loaded = cli.algebra.as_deref().map(load).transpose()?;
            let env = Env { algebra: loaded.as_ref(), n: cli.n };
            let value: Val = evaluate(&env, &parse(expression)?)?;
            let mut json = value.to_json();
            json["expression"] = json!(expression);
            json["algebra"] = json!(loaded.as_ref().map(|l| l.name.clone()));
            Ok((render(cli, &json, format!("{}\n", value.to_text())), true))
        }
    }
}

fn verify(cli: &Cli, name: &str) -> Result<(String, bool), UsageError> {
    let s = suite(name).ok_or_else(|| format!("unknown suite `{name}`; known: {}", SUITES.join(", ")))?;
    if let Some(n) = cli.n {
        if !(1..=8).contains(&n) {
            return Err(format!("--n must lie in 1..=8, got {n}").into());
        }
    }
    let source = cli.algebra.as_deref().or(s.default_algebra);
    let algebra = source.map(load).transpose()?;
    if s.needs_associative {
        if let Some(a) = &algebra {
            a.require_assoc()?;
        }
    }
    let ctx = Ctx { algebra, n: cli.n, seed: cli.seed };
    let start = Instant::now();
    let checks = run(&s, &ctx);
    let report = RunReport {
        suite: s.name.to_string(),
        algebra: ctx.algebra.as_ref().map(|a| a.name.clone()),
        seed: cli.seed,
        checks,
        duration_ms: cli.timing.then(|| start.elapsed().as_millis()),
    };
    Ok((render(cli, &report.to_json(), report.to_text()), report.passed()))
}

/// Arity needed so that Betti numbers are determined through `max_degree`.
fn arity_for(cli: &Cli, top: usize, default: usize) -> Result<usize, UsageError> {
    match (cli.max_arity, cli.max_degree) {
        (Some(a), Some(d)) if a < d => {
            Err(format!("--max-arity {a} truncates the complex below the requested degree {d}").into())
        }
        (Some(a), _) => Ok(a.min(top)),
        (None, Some(d)) => Ok((d + 1).min(top)),
        (None, None) => Ok(default.min(top)),
    }
}

fn cohomology(cli: &Cli, loaded: &Loaded, complex: &str) -> Result<BettiTable, UsageError> {
    let l = &loaded.lie;
    let n = l.dim();
    let err = |e: gla_core::GlaError| UsageError(e.to_string());
    let mut table = match complex {
        "trivial" => trivial_complex(l).map_err(err)?.betti(),
        "adjoint" => {
            let arity = arity_for(cli, n, if n <= 5 { n } else { 4 })?;
            adjoint_complex(l, arity).map_err(err)?.betti()
        }
        "cyclic" => {
            if l.gram().is_none() {
                return Err(format!("`{}` has no invariant form; the cyclic complex needs one", loaded.name).into());
            }
            let arity = arity_for(cli, n - 1, n - 1)?;
            cyclic_complex(l, arity).map_err(err)?.betti()
        }
        other => {
            let Some(expr) = other.strip_prefix("twoK:") else {
                return Err(format!("unknown complex `{other}`; expected trivial, adjoint, cyclic or twoK:<expression>").into());
            };
            let env = Env { algebra: Some(loaded), n: None };
            let f = match evaluate(&env, &parse(expr)?)? {
                Val::Skew(f) if f.arity() >= 2 && f.arity() % 2 == 0 => f,
                _ => return Err(format!("`{expr}` is not a skew map of positive even arity").into()),
            };
            let mut t = two_k_complex(&f).map_err(err)?.betti();
            t.complex = format!("twoK:{expr}");
            t
        }
    };
    if let Some(d) = cli.max_degree {
        table.rows.truncate(d + 1);
    }
    Ok(table)
}
