//! The `supermod` command line: argument parsing, exit codes and the
//! [`RunReport`] every command prints.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

pub mod commands;
pub mod io;
pub mod render;
pub mod reproduce;

pub use reproduce::{reproduce_paper, DEFAULT_GOLDEN};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lib(#[from] supermod::Error),
}

impl CliError {
    /// 1 for a well-formed negative answer, 2 for bad input or size limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(supermod::Error::NotSupermodular | supermod::Error::Consistency(_)) => 1,
            _ => 2,
        }
    }
}

/// One verified claim of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl Check {
    pub fn new(claim: impl Into<String>, expected: impl ToString, got: impl ToString) -> Self {
        let (expected, got) = (expected.to_string(), got.to_string());
        Check { claim: claim.into(), pass: expected == got, expected, got }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of every file read, keyed by path.
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let value = render::to_value(self);
        serde_json::to_string_pretty(&value).expect("report serializes") + "\n"
    }
}

/// What a command computed, before it is wrapped in a [`RunReport`].
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub results: Value,
    pub table: Vec<String>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "supermod", version, about = "Supermodular games on distributive lattices")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a poset file.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// The lattice of down-sets.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Properties and transforms of a game.
    #[command(subcommand)]
    Game(GameCmd),
    /// Marginal vectors, tight sets and the core.
    #[command(subcommand)]
    Core(CoreCmd),
    /// The cone of supermodular games.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Recompute the worked example and the n = 4 Boolean counts.
    ReproducePaper {
        /// Replace the built-in golden data.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PosetCmd {
    Show { poset: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// All down-sets and the join-irreducibles.
    Downsets { poset: PathBuf },
    /// Maximal chains and their compatible permutations.
    Chains { poset: PathBuf },
    /// The Möbius function μ(from, to).
    Moebius {
        poset: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameClass {
    Supermodular,
    Modular,
    Monotone,
    Nonnegative,
    ZeroNormalized,
}

#[derive(Debug, Subcommand)]
pub enum GameCmd {
    /// Exit 0 if the game belongs to the class, 1 otherwise.
    Check {
        game: PathBuf,
        #[arg(long, value_enum)]
        class: GameClass,
    },
    /// Coefficients in the unanimity basis.
    Moebius { game: PathBuf },
    /// Split into a 0-normalized game plus a modular game.
    Normalize { game: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CoreCmd {
    /// Vertices of the core of a supermodular game.
    Vertices { game: PathBuf },
    /// The marginal vector of every compatible permutation.
    Marginals { game: PathBuf },
    /// Tight sets and zero players per permutation.
    Tight {
        game: PathBuf,
        #[arg(long)]
        perm: Option<String>,
    },
    /// min over permutations of x(A).
    Envelope {
        game: PathBuf,
        #[arg(long)]
        coalition: String,
    },
    /// A recession direction of the core, if the lattice is not Boolean.
    Witness { poset: PathBuf },
    /// Inequalities describing the core.
    Hrep { game: PathBuf },
    /// Recover a game from one payoff vector per permutation.
    Reconstruct { poset: PathBuf, configuration: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Method {
    #[default]
    System,
    Games,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum ConeCmd {
    /// Exit 0 if the game spans an extreme ray, 1 otherwise.
    IsExtreme {
        game: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::System)]
        method: Method,
    },
    /// Extreme rays of the 0-normalized cone.
    Rays { poset: PathBuf },
    /// The facet-defining inequalities.
    Facets { poset: PathBuf },
    /// Dimension of the 0-normalized cone.
    Dim { poset: PathBuf },
    /// Relative position of the faces containing two games.
    FaceCompare { first: PathBuf, second: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Poset(PosetCmd::Show { .. }) => "poset show",
            Command::Lattice(c) => match c {
                LatticeCmd::Downsets { .. } => "lattice downsets",
                LatticeCmd::Chains { .. } => "lattice chains",
                LatticeCmd::Moebius { .. } => "lattice moebius",
            },
            Command::Game(c) => match c {
                GameCmd::Check { .. } => "game check",
                GameCmd::Moebius { .. } => "game moebius",
                GameCmd::Normalize { .. } => "game normalize",
            },
            Command::Core(c) => match c {
                CoreCmd::Vertices { .. } => "core vertices",
                CoreCmd::Marginals { .. } => "core marginals",
                CoreCmd::Tight { .. } => "core tight",
                CoreCmd::Envelope { .. } => "core envelope",
                CoreCmd::Witness { .. } => "core witness",
                CoreCmd::Hrep { .. } => "core hrep",
                CoreCmd::Reconstruct { .. } => "core reconstruct",
            },
            Command::Cone(c) => match c {
                ConeCmd::IsExtreme { .. } => "cone is-extreme",
                ConeCmd::Rays { .. } => "cone rays",
                ConeCmd::Facets { .. } => "cone facets",
                ConeCmd::Dim { .. } => "cone dim",
                ConeCmd::FaceCompare { .. } => "cone face-compare",
            },
            Command::ReproducePaper { .. } => "reproduce-paper",
        }
    }
}

/// Executes a parsed command.
pub fn execute(command: &Command) -> Result<RunReport, CliError> {
    run_command(command).map(|(report, _)| report)
}

/// Parses `args` (including the program name), runs the command and writes
/// the report. Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (report, table) = match run_command(&cli.command) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Table => render_table(&report, &table),
    };
    let _ = out.write_all(text.as_bytes());
    if let Some(c) = report.first_failure() {
        let _ = writeln!(err, "check failed: {} (expected {}, got {})", c.claim, c.expected, c.got);
    }
    report.exit_code()
}

/// Like [`execute`], also returning the table lines.
pub fn run_command(command: &Command) -> Result<(RunReport, Vec<String>), CliError> {
    if let Command::ReproducePaper { golden } = command {
        let report = reproduce::run(golden.as_deref())?;
        let table = reproduce::table(&report);
        return Ok((report, table));
    }
    let mut loader = io::Loader::from_env()?;
    let outcome = commands::dispatch(command, &mut loader)?;
    let report = RunReport {
        command: command.name().to_string(),
        inputs: loader.digests,
        results: outcome.results,
        checks: outcome.checks,
    };
    Ok((report, outcome.table))
}

fn render_table(report: &RunReport, table: &[String]) -> String {
    let mut s = String::new();
    for line in table {
        s.push_str(line);
        s.push('\n');
    }
    for c in &report.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        s.push_str(&format!("{tag}  {}: expected {}, got {}\n", c.claim, c.expected, c.got));
    }
    s
}
