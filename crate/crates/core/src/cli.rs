//! The `tqft2d` command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input (usage, I/O or a
//! parse error with `line:column`), 3 an internal invariant was violated.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::functor::verify::{
    verify_decomposition_invariance, verify_functoriality, verify_gluing, verify_monoidal, Report,
};
use crate::functor::{FunctorError, Tqft};
use crate::scalar::Scalar;
use crate::surface::{GlueSpec, Surface};
use crate::tqft::{grid_search_dim1, AnyTqft, TqftData};

/// Largest genus used by the `moves` suite.
pub const MOVES_MAX_GENUS: u32 = 3;
/// Largest boundary count used by the `moves` suite.
pub const MOVES_MAX_BOUNDARY: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "tqft2d", version, about = "Tensor calculus for 2d TQFTs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the four relations; exits 1 if any fails.
    Check { tqft: PathBuf },
    /// Print the tensor assigned to a surface.
    Invariant { tqft: PathBuf, surface: PathBuf },
    /// Glue boundary circles of a surface.
    Glue {
        surface: PathBuf,
        /// Pairs to glue, `a:b,c:d`.
        #[arg(long, allow_hyphen_values = true)]
        pairs: String,
        /// Print the glued surface (the default).
        #[arg(long, conflicts_with = "emit_tensor")]
        emit_surface: bool,
        /// Print the tensor of the glued surface under this data.
        #[arg(long, value_name = "TQFT_FILE")]
        emit_tensor: Option<PathBuf>,
    },
    /// Print the invariant of the closed surface of genus g.
    Closed {
        tqft: PathBuf,
        #[arg(long)]
        genus: u32,
    },
    /// Run randomised verification suites; exits 1 on any mismatch.
    Verify {
        tqft: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the rational solutions of bounded height.
    Search {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        height: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Moves,
    Functor,
    Monoidal,
}

/// Exit code and the text for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(passed: bool, stdout: String) -> Self {
        Outcome {
            code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Verdict(String),
    Internal(String),
}

impl Failure {
    fn into_outcome(self) -> Outcome {
        let (code, message) = match self {
            Failure::Input(m) => (2, m),
            Failure::Verdict(m) => (1, m),
            Failure::Internal(m) => (3, format!("internal error: {m}")),
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

impl From<FunctorError> for Failure {
    fn from(e: FunctorError) -> Self {
        match e {
            FunctorError::RelationsFailed(_) => Failure::Verdict(e.to_string()),
            FunctorError::Surface(_) => Failure::Input(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(cli.command).unwrap_or_else(Failure::into_outcome)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path) -> Result<T, Failure>
where
    T: std::str::FromStr<Err = crate::text::ParseError>,
{
    read(path)?
        .parse()
        .map_err(|e| Failure::Input(format!("{}:{e}", path.display())))
}

macro_rules! with_data {
    ($any:expr, $data:ident => $body:expr) => {
        match $any {
            AnyTqft::Rational($data) => $body,
            AnyTqft::Complex($data) => $body,
        }
    };
}

fn execute(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { tqft } => {
            let any: AnyTqft = load(&tqft)?;
            Ok(with_data!(any, data => {
                let report = data.check_relations();
                Outcome::verdict(report.passed(), report.to_string())
            }))
        }
        Command::Invariant { tqft, surface } => {
            let any: AnyTqft = load(&tqft)?;
            let surface: Surface = load(&surface)?;
            with_data!(any, data => invariant(data, &surface))
        }
        Command::Glue {
            surface,
            pairs,
            emit_surface: _,
            emit_tensor,
        } => {
            let surface: Surface = load(&surface)?;
            let spec: GlueSpec = pairs
                .parse()
                .map_err(|e| Failure::Input(format!("--pairs:{e}")))?;
            surface
                .check_spec(&spec)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let data = emit_tensor.map(|path| load::<AnyTqft>(&path)).transpose()?;
            let glued = surface
                .glue(&spec)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            match data {
                None => Ok(Outcome::ok(glued.to_string())),
                Some(any) => with_data!(any, data => invariant(data, &glued)),
            }
        }
        Command::Closed { tqft, genus } => {
            let any: AnyTqft = load(&tqft)?;
            with_data!(any, data => {
                let value = Tqft::new(data)?.closed_invariant(genus)?;
                Ok(Outcome::ok(format!("{}\n", value.render())))
            })
        }
        Command::Verify {
            tqft,
            suite,
            trials,
            seed,
        } => {
            let any: AnyTqft = load(&tqft)?;
            with_data!(any, data => verify(data, suite, trials, seed))
        }
        Command::Search { dim, height } => {
            if dim != 1 {
                return Err(Failure::Input(format!(
                    "--dim {dim}: only dimension 1 is searched"
                )));
            }
            let found = grid_search_dim1(height).map_err(|e| Failure::Input(e.to_string()))?;
            let mut out = String::new();
            for data in &found {
                writeln!(
                    out,
                    "d={} p={}",
                    data.d_at(0).render(),
                    data.p_at(0, 0, 0).render()
                )
                .unwrap();
            }
            writeln!(out, "{} solutions at height {height}", found.len()).unwrap();
            Ok(Outcome::ok(out))
        }
    }
}

fn invariant<S: Scalar>(data: TqftData<S>, surface: &Surface) -> Result<Outcome, Failure> {
    let tensor = Tqft::new(data)?.invariant(surface)?;
    Ok(Outcome::ok(tensor.to_string()))
}

fn verify<S: Scalar>(
    data: TqftData<S>,
    suite: Suite,
    trials: usize,
    seed: u64,
) -> Result<Outcome, Failure> {
    let tqft = Tqft::new(data)?;
    let mut report = Report::default();
    if matches!(suite, Suite::All | Suite::Moves) {
        report.extend(verify_decomposition_invariance(
            &tqft,
            MOVES_MAX_GENUS,
            MOVES_MAX_BOUNDARY,
            trials,
            seed,
        ));
    }
    if matches!(suite, Suite::All | Suite::Functor) {
        report.extend(verify_functoriality(&tqft, trials, seed));
        report.extend(verify_gluing(&tqft, trials, seed));
    }
    if matches!(suite, Suite::All | Suite::Monoidal) {
        report.extend(verify_monoidal(&tqft, trials, seed));
    }
    let failed = report.failures().count();
    let mut out = report.to_string();
    writeln!(out, "{} checks, {failed} failed", report.lines.len()).unwrap();
    Ok(Outcome::verdict(failed == 0, out))
}
