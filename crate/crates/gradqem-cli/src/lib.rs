//! Command-line front end for the `gradqem` quadrature elements: single
//! analyses, convergence studies and reproduction of the reference tables.

pub mod config;
pub mod output;
pub mod reference;
pub mod reproduce;
pub mod run;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gradqem::sweep::Execution;

use config::{Format, Problem, RunConfig, Settings};
use run::ResultRow;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
    /// `reproduce --strict` found deviations beyond tolerance.
    Acceptance(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Acceptance(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Acceptance(k) => write!(f, "{k} value(s) outside tolerance"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<gradqem::Error> for CliError {
    fn from(e: gradqem::Error) -> Self {
        match e {
            gradqem::Error::InvalidInput(m) => CliError::Usage(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gradqem", version, about = "Free vibration of strain-gradient beams and plates by weak-form quadrature elements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frequencies of a gradient beam.
    Beam(CaseArgs),
    /// Frequencies of a rectangular gradient plate.
    Plate(CaseArgs),
    /// Exact frequencies only (all beam conditions, SSSS plate).
    Oracle {
        #[arg(long, default_value = "beam")]
        problem: Problem,
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Compare against one of the reference tables (1 to 8).
    Reproduce {
        #[arg(long)]
        table: u32,
        /// Exit with status 3 if any checked value deviates by more than 0.5%.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Frequencies against N for a convergence plot.
    Converge {
        #[arg(long, default_value = "beam")]
        problem: Problem,
        #[arg(long, default_value_t = 7)]
        n_min: usize,
        #[arg(long, default_value_t = 13)]
        n_max: usize,
        #[command(flatten)]
        case: CaseArgs,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct CaseArgs {
    #[arg(long)]
    pub bc: Option<String>,
    #[arg(long)]
    pub basis: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub g: Option<f64>,
    /// Multiplies g before use.
    #[arg(long)]
    pub g_scale: Option<f64>,
    #[arg(long)]
    pub modes: Option<usize>,
    #[arg(long)]
    pub with_oracle: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file of settings; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl CaseArgs {
    fn resolve(&self, problem: Problem) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(p) => Settings::load(p)?,
            None => Settings::default(),
        };
        let cli = Settings {
            bc: self.bc.clone(),
            basis: self.basis.clone(),
            n: self.n,
            g: self.g,
            g_scale: self.g_scale,
            modes: self.modes,
            with_oracle: self.with_oracle.then_some(true),
            format: self.format.map(|f| format!("{f:?}")),
            out: self.out.clone(),
            ..Settings::default()
        };
        file.overlaid(cli).resolve(problem)
    }
}

fn emit_rows(rows: &[ResultRow], format: Format, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => output::write_csv(rows, &mut buf)?,
        Format::Table => buf.extend_from_slice(output::rows_table(rows).as_bytes()),
    }
    emit(&buf, out, stdout)
}

fn emit(bytes: &[u8], out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => stdout.write_all(bytes).map_err(io),
    }
}

/// Runs a parsed command, writing results to `stdout` (or `--out`) and
/// diagnostics to `stderr`.
pub fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let exec = Execution::default();
    match cli.command {
        Command::Beam(args) => {
            let c = args.resolve(Problem::Beam)?;
            emit_rows(&run::run(&c)?, c.format, c.out.as_ref(), stdout)
        }
        Command::Plate(args) => {
            let c = args.resolve(Problem::Plate)?;
            emit_rows(&run::run(&c)?, c.format, c.out.as_ref(), stdout)
        }
        Command::Oracle { problem, case } => {
            let c = case.resolve(problem)?;
            emit_rows(&run::run_oracle(&c)?, c.format, c.out.as_ref(), stdout)
        }
        Command::Converge { problem, n_min, n_max, case } => {
            if case.n.is_some() {
                return Err(CliError::Usage("converge takes --n-min and --n-max, not --n".into()));
            }
            let c = case.resolve(problem)?;
            let ns: Vec<usize> = (n_min..=n_max).collect();
            emit_rows(&run::convergence(&c, &ns, exec)?, c.format, c.out.as_ref(), stdout)
        }
        Command::Reproduce { table, strict, n, format, out } => {
            let r = reproduce::reproduce_table(table, n, exec)?;
            match format {
                Format::Table => emit(r.text.as_bytes(), out.as_ref(), stdout)?,
                Format::Csv => emit_rows(&r.rows, Format::Csv, out.as_ref(), stdout)?,
            }
            for f in &r.failures {
                let _ = writeln!(stderr, "deviation: {f}");
            }
            if strict && !r.failures.is_empty() {
                return Err(CliError::Acceptance(r.failures.len()));
            }
            Ok(())
        }
    }
}

/// Parses `args`, sizes the thread pool from `GRADQEM_THREADS` and runs.
/// Returns the process exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    limit_threads();
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "gradqem: {e}");
            e.exit_code()
        }
    }
}

#[cfg(feature = "parallel")]
fn limit_threads() {
    let threads = std::env::var("GRADQEM_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok());
    if let Some(t) = threads {
        // fails only if the global pool already exists, e.g. on a second call
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn limit_threads() {}
