//! `canon4`: invariants, canonical parameters and reconstruction of
//! surfaces in R⁴ from the command line.
//!
//! Exit codes: 0 pass, 1 check failure, 2 input or domain error,
//! 3 compatibility gate.

mod commands;
mod defs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use canon4::{Error, Result};
use commands::{ConventionArg, Outcome, SourceOpts};
use output::{emit, Format};

#[derive(Parser, Debug)]
#[command(name = "canon4", version, about = "Invariants, canonical principal parameters and reconstruction of surfaces in R^4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Io {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Override a threshold, e.g. tol_compat=1e-5 (repeatable).
    #[arg(long = "tolerance", value_name = "NAME=VAL")]
    tolerance: Vec<String>,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Surface definition file (JSON, schema canon4/v1).
    #[arg(long, value_name = "FILE")]
    surface: Option<PathBuf>,
    /// Built-in entry: plane, example1_surface, example2, example3_raw,
    /// example3_rotated, example3_canonical, example4_raw, example4_rotated,
    /// example4_scaled, example4_opposite; data: example1_data,
    /// example2_data, example4_data.
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
    /// Lattice shape.
    #[arg(long, value_name = "NUxNV")]
    grid: Option<String>,
    /// Lattice bounds u_min,u_max,v_min,v_max.
    #[arg(long, value_name = "A,B,C,D", allow_hyphen_values = true)]
    bounds: Option<String>,
    /// Base point u0,v0.
    #[arg(long, value_name = "U0,V0", allow_hyphen_values = true)]
    base: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c2: Option<f64>,
    /// Ratio of the base-line metric roots; defaults to exp(c2 - c1).
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Scale one function by a factor, e.g. mu=1.01 (repeatable).
    #[arg(long, value_name = "FIELD=FACTOR")]
    perturb: Vec<String>,
    /// Reading of the scale functions.
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
    #[command(flatten)]
    io: Io,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fundamental forms, curvatures and, for principal charts, the eight
    /// geometric functions at every node.
    Invariants(Source),
    /// Residuals of the six compatibility equations.
    Check(Source),
    /// Reparametrize a principal chart to canonical principal parameters.
    Canonize {
        #[command(flatten)]
        source: Source,
        /// Choose c1, c2 so that the metric is normalized at the base point.
        #[arg(long)]
        normalize: bool,
    },
    /// Reconstruct a surface from its determining functions.
    Reconstruct {
        /// Determining-data file (JSON, schema canon4/v1).
        #[arg(long, value_name = "FILE")]
        data: Option<PathBuf>,
        #[command(flatten)]
        source: Source,
        /// Proceed when the compatibility residual exceeds tol_compat.
        #[arg(long)]
        force: bool,
    },
    /// Best rigid motion taking the positions of grid A onto grid B.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        io: Io,
    },
}

fn source_opts(s: &Source) -> Result<SourceOpts> {
    let pair = |v: &Option<String>, what: &str| -> Result<Option<(f64, f64)>> {
        v.as_deref().map(|x| commands::parse_reals::<2>(x, what).map(|[a, b]| (a, b))).transpose()
    };
    Ok(SourceOpts {
        surface: s.surface.clone(),
        catalog: s.catalog.clone(),
        grid: s.grid.as_deref().map(commands::parse_grid).transpose()?,
        bounds: s
            .bounds
            .as_deref()
            .map(|x| commands::parse_reals::<4>(x, "bounds").map(|[a, b, c, d]| canon4::lattice::Rect::new(a, b, c, d)))
            .transpose()?,
        base: pair(&s.base, "base")?,
        c1: s.c1,
        c2: s.c2,
        c: s.c,
        perturb: s.perturb.iter().map(|p| commands::parse_assignment(p)).collect::<Result<_>>()?,
        convention: s.convention.map(Into::into),
        ..SourceOpts::default()
    })
}

fn run(cli: Cli) -> Result<(Outcome, Io)> {
    match cli.command {
        Command::Invariants(s) => {
            let tol = commands::tolerances(&s.io.tolerance)?;
            Ok((commands::invariants_cmd(&source_opts(&s)?, &tol, s.io.format)?, s.io))
        }
        Command::Check(s) => {
            let tol = commands::tolerances(&s.io.tolerance)?;
            Ok((commands::check_cmd(&source_opts(&s)?, &tol, s.io.format)?, s.io))
        }
        Command::Canonize { source, normalize } => {
            let tol = commands::tolerances(&source.io.tolerance)?;
            let opts = SourceOpts { normalize, ..source_opts(&source)? };
            Ok((commands::canonize_cmd(&opts, &tol, source.io.format)?, source.io))
        }
        Command::Reconstruct { data, source, force } => {
            let tol = commands::tolerances(&source.io.tolerance)?;
            let opts = SourceOpts { data, force, ..source_opts(&source)? };
            Ok((commands::reconstruct_cmd(&opts, &tol, source.io.format)?, source.io))
        }
        Command::Compare { a, b, io } => {
            commands::tolerances(&io.tolerance)?;
            Ok((commands::compare_cmd(&a, &b, io.format)?, io))
        }
    }
}

fn fail(e: &Error) -> ExitCode {
    let record = serde_json::json!({
        "schema": defs::SCHEMA,
        "error": {"kind": e.kind(), "message": e.to_string()},
    });
    eprintln!("{record}");
    ExitCode::from(if matches!(e, Error::CompatibilityGate { .. }) { 3 } else { 2 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, io)) => match emit(&outcome.text, io.out.as_deref()) {
            Ok(()) => ExitCode::from(outcome.code),
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}
