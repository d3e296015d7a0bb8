//! Command-line front end for `finsler-lie`.
//!
//! Exit codes: 0 success, 1 validation failure, 2 precondition or route
//! failure, 3 parse error (input file or arguments).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use finsler_lie::lie_core::DEFAULT_STRUCTURAL_TOL;
use finsler_lie::matsumoto::{CurvatureBackend, MatsumotoSpace, Route, DEFAULT_FD_STEP};
use finsler_lie::Vector;

pub mod commands;
pub mod output;
pub mod spacefile;
pub mod sweep;

use commands::Output;
use output::Report;

pub const DEFAULT_AGREE_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    /// The input does not describe a valid space.
    #[error("{0}")]
    Invalid(finsler_lie::Error),
    /// A computation refused or failed.
    #[error("{0}")]
    Core(#[from] finsler_lie::Error),
    #[error("{0}")]
    Route(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 3,
            CliError::Invalid(_) => 1,
            CliError::Core(e) if e.is_validation() => 1,
            CliError::Core(_) | CliError::Route(_) => 2,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::Invalid(e) | CliError::Core(e) => e.name(),
            CliError::Route(_) => "RouteFailure",
        }
    }

    /// Error fields with indices shifted to the 1-based convention of the
    /// input files.
    pub fn report(&self) -> Report {
        use finsler_lie::Error as E;
        let mut r = Report::new();
        r.section("error")
            .field("status", "error")
            .field("error", self.name());
        let triple = |t: &[usize; 3]| {
            t.iter()
                .map(|k| (k + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            CliError::Invalid(e) | CliError::Core(e) => match e {
                E::JacobiViolation {
                    residual,
                    triple: t,
                } => {
                    r.field("residual", *residual).field("triple", triple(t));
                }
                E::NotNaturallyReductive {
                    residual,
                    triple: t,
                } => {
                    r.field("residual", *residual).field("triple", triple(t));
                }
                E::InvalidBracket { i, j, reason } => {
                    r.field("bracket", format!("{},{}", i + 1, j + 1))
                        .field("reason", reason.as_str());
                }
                E::NotSymmetric { residual, row, col } => {
                    r.field("residual", *residual)
                        .field("entry", format!("{},{}", row + 1, col + 1));
                }
                E::NotASubalgebra { residual, i, j } => {
                    r.field("residual", *residual)
                        .field("generators", format!("{},{}", i + 1, j + 1));
                }
                E::DependentGenerators { index } => {
                    r.field("generator", index + 1);
                }
                other => {
                    r.field("message", other.to_string());
                }
            },
            other => {
                r.field("message", other.to_string());
            }
        }
        r.field("exit_code", self.exit_code() as usize);
        r
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "finsler-lie",
    version,
    about = "Invariant Matsumoto metrics on Lie groups: curvature, flags, sweeps"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Emit line-oriented key=value records instead of text.
    #[arg(long, global = true)]
    pub records: bool,
    /// Structural tolerance [default: 1e-9, or the file's value].
    #[arg(long, global = true)]
    pub tol_structural: Option<f64>,
    /// Route agreement tolerance [default: 1e-6, or the file's value].
    #[arg(long, global = true)]
    pub tol_agree: Option<f64>,
    /// Finite-difference step for the fundamental tensor oracle
    /// [default: 1e-4, or the file's value].
    #[arg(long, global = true)]
    pub fd_step: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a space file.
    Validate { path: PathBuf },
    /// Levi-Civita connection table.
    Connection { path: PathBuf },
    /// Curvature components and symmetry residuals.
    Curvature {
        path: PathBuf,
        /// auto, koszul, puttmann, nat-red or bi-invariant.
        #[arg(long, default_value = "auto", value_parser = parse_backend)]
        backend: CurvatureBackend,
    },
    /// Parallel invariant fields and admissibility bounds.
    Parallel { path: PathBuf },
    /// Flag curvature of one flag.
    Flag {
        path: PathBuf,
        /// Flagpole: comma-separated coordinates or a basis name.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Second vector of the plane.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// all, or a comma-separated subset of direct, closed, bi-invariant.
        #[arg(long, default_value = "all", value_parser = parse_routes)]
        routes: RouteSet,
        #[arg(long, default_value = "auto", value_parser = parse_backend)]
        backend: CurvatureBackend,
        /// Evaluate even when the drift is not parallel (formal values).
        #[arg(long)]
        force: bool,
    },
    /// Flag curvature statistics over random flags.
    Sweep {
        path: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "all", value_parser = parse_routes)]
        routes: RouteSet,
        #[arg(long, default_value = "auto", value_parser = parse_backend)]
        backend: CurvatureBackend,
        #[arg(long)]
        force: bool,
    },
    /// Classification of the space.
    Report { path: PathBuf },
    /// Built-in example spaces.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// List the built-in spaces and their parameters.
    List,
    /// Print a built-in space as a space file.
    Emit {
        name: String,
        /// Parameter override, e.g. `--param lambda=2`.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteSet(pub Vec<Route>);

fn parse_backend(s: &str) -> Result<CurvatureBackend, String> {
    CurvatureBackend::parse(s).ok_or_else(|| format!("unknown backend `{s}`"))
}

fn parse_routes(s: &str) -> Result<RouteSet, String> {
    if s == "all" {
        return Ok(RouteSet(Route::ALL.to_vec()));
    }
    let mut routes = Vec::new();
    for part in s.split(',') {
        let r = Route::parse(part.trim()).ok_or_else(|| format!("unknown route `{part}`"))?;
        if !routes.contains(&r) {
            routes.push(r);
        }
    }
    Ok(RouteSet(routes))
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected name=value")?;
    let v: f64 = v.trim().parse().map_err(|e| format!("{v}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

/// Tolerances after combining defaults, the file and the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub structural: f64,
    pub agree: f64,
    pub fd_step: f64,
}

fn positive(name: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Parse(format!("{name} must be positive, got {x}")))
    }
}

pub fn load(path: &Path, global: &GlobalOpts) -> Result<(MatsumotoSpace, Settings), CliError> {
    let file = spacefile::read(path)?;
    let from_file = file.tolerances.unwrap_or_default();
    let settings = Settings {
        structural: positive(
            "structural tolerance",
            global
                .tol_structural
                .or(from_file.structural)
                .unwrap_or(DEFAULT_STRUCTURAL_TOL),
        )?,
        agree: positive(
            "agreement tolerance",
            global
                .tol_agree
                .or(from_file.agree)
                .unwrap_or(DEFAULT_AGREE_TOL),
        )?,
        fd_step: positive(
            "fd step",
            global
                .fd_step
                .or(from_file.fd_step)
                .unwrap_or(DEFAULT_FD_STEP),
        )?,
    };
    let space = file.build(settings.structural)?;
    Ok((space, settings))
}

/// A vector argument: comma-separated coordinates or a basis name.
pub fn parse_vector(text: &str, space: &MatsumotoSpace) -> Result<Vector, CliError> {
    let names = space.alg.basis_names();
    if let Some(k) = names.iter().position(|n| n == text.trim()) {
        return Ok(space.alg.basis_vector(k));
    }
    let coords = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Parse(format!("vector `{text}`: {e}")))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    if coords.len() != space.dim() {
        return Err(CliError::Parse(format!(
            "vector `{text}` has {} coordinates, the space has dimension {}",
            coords.len(),
            space.dim()
        )));
    }
    Ok(Vector::from_vec(coords))
}

/// What a verb produced: text to print, and possibly a failure that sets the
/// exit code after printing.
enum Produced {
    Report(Output),
    Raw(String),
}

fn dispatch(cli: &Cli) -> Result<Produced, CliError> {
    let g = &cli.global;
    let report = |r: Report| Ok(Produced::Report(r.into()));
    match &cli.command {
        Command::Validate { path } => {
            let (space, s) = load(path, g)?;
            report(commands::validate(&space, &s))
        }
        Command::Connection { path } => {
            let (space, _) = load(path, g)?;
            report(commands::connection(&space)?)
        }
        Command::Curvature { path, backend } => {
            let (space, _) = load(path, g)?;
            report(commands::curvature(&space, *backend)?)
        }
        Command::Parallel { path } => {
            let (space, _) = load(path, g)?;
            report(commands::parallel(&space)?)
        }
        Command::Flag {
            path,
            y,
            u,
            routes,
            backend,
            force,
        } => {
            let (space, s) = load(path, g)?;
            let (y, u) = (parse_vector(y, &space)?, parse_vector(u, &space)?);
            commands::flag(&space, &s, &y, &u, &routes.0, *backend, *force).map(Produced::Report)
        }
        Command::Sweep {
            path,
            samples,
            seed,
            routes,
            backend,
            force,
        } => {
            let (space, s) = load(path, g)?;
            let opts = sweep::SweepOptions {
                samples: *samples,
                seed: *seed,
                routes: routes.0.clone(),
                backend: *backend,
                force: *force,
            };
            sweep::sweep(&space, &s, &opts).map(Produced::Report)
        }
        Command::Report { path } => {
            let (space, _) = load(path, g)?;
            report(commands::report(&space))
        }
        Command::Catalog(CatalogCommand::List) => report(commands::catalog_list()),
        Command::Catalog(CatalogCommand::Emit { name, params }) => {
            commands::catalog_emit(name, params).map(Produced::Raw)
        }
    }
}

fn print_error(e: &CliError, records: bool, out: &mut impl Write) -> i32 {
    let rendered = e.report().render(records);
    if records {
        let _ = out.write_all(rendered.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(rendered.as_bytes());
    }
    e.exit_code()
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    let records = cli.global.records;
    let mut stdout = std::io::stdout().lock();
    match dispatch(&cli) {
        Ok(Produced::Raw(text)) => {
            let _ = writeln!(stdout, "{text}");
            0
        }
        Ok(Produced::Report(out)) => {
            let _ = stdout.write_all(out.report.render(records).as_bytes());
            match &out.failure {
                Some(e) => print_error(e, records, &mut stdout),
                None => 0,
            }
        }
        Err(e) => print_error(&e, records, &mut stdout),
    }
}
