//! The `pbw` command line: argument parsing, dispatch, and report output.
//!
//! [`run_command`] is the whole program minus printing, so tests can drive
//! it in process.

mod commands;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pbw_core::parse::parse_field;
use pbw_core::{AlgebraError, Field, WordKind};

pub use report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "pbw",
    version,
    about = "PBW structure of connected graded Hopf algebras, certified up to a degree bound"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub(crate) struct GlobalArgs {
    /// Degree bound D; overrides `degree_bound` in the file.
    #[arg(long, global = true, value_name = "D")]
    pub bound: Option<u32>,
    /// Write the machine-readable report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// `Q` or `Fp:<p>`; overrides the field in the file.
    #[arg(long, global = true, value_parser = field_arg)]
    pub field: Option<Field>,
    /// Print nothing on success.
    #[arg(long, global = true)]
    pub quiet: bool,
}

fn field_arg(s: &str) -> Result<Field, String> {
    parse_field(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lyndon words: decomposition, the Lyndon test, standard bracketing.
    Lyndon {
        #[command(subcommand)]
        op: LyndonOp,
    },
    /// The truncated reduced Gröbner basis.
    Gb { file: PathBuf },
    /// Basis words of one degree.
    Basis {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value = "irreducible", value_parser = kind_arg)]
        kind: WordKind,
    },
    /// Hilbert coefficients, the product over Γ, GK dimension.
    Hilbert { file: PathBuf },
    /// Triangularity, stability and the PBW-generator conditions.
    Verify { file: PathBuf },
    /// Coassociativity, counit and antipode.
    HopfCheck { file: PathBuf },
    /// The iterated Ore extension tower over Γ.
    Ihoe { file: PathBuf },
    /// Lie generators of the ideal (characteristic 0, primitive generators).
    LieGens { file: PathBuf },
    /// Heights of the irreducible Lyndon words.
    Heights { file: PathBuf },
}

fn kind_arg(s: &str) -> Result<WordKind, String> {
    s.parse().map_err(|e: AlgebraError| e.to_string())
}

#[derive(Debug, Subcommand)]
enum LyndonOp {
    /// Nondecreasing Lyndon factorization.
    Decompose(WordArgs),
    /// Whether the word is Lyndon, with its Shirshov factorization.
    Check(WordArgs),
    /// The standard bracketing `[w]`.
    Bracket(WordArgs),
}

#[derive(Debug, Clone, Args)]
pub(crate) struct WordArgs {
    /// Letters separated by spaces or `*` (`x2*x1`, `y x^2`), or a run of
    /// single-character letters (`bab`).
    pub word: String,
    /// Ordered letters with optional degrees, `a,b,c` or `x:1,y:2`.
    /// Inferred from the word when omitted.
    #[arg(long)]
    pub alphabet: Option<String>,
}

/// Exit status and report of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    /// 0: every verdict passes; 1: a verdict fails; 2: input or usage error.
    pub code: i32,
    pub report: Report,
    /// Help, version or usage text from argument parsing, in place of a report.
    pub usage: Option<String>,
    pub quiet: bool,
}

impl Outcome {
    fn from_report(report: Report, quiet: bool) -> Self {
        let code = if report.passed() { 0 } else { 1 };
        Self {
            code,
            report,
            usage: None,
            quiet,
        }
    }

    fn input_error(mut report: Report, e: impl std::fmt::Display, quiet: bool) -> Self {
        report.note(format!("error: {e}"));
        Self {
            code: 2,
            report,
            usage: None,
            quiet,
        }
    }
}

/// Parses `argv` (program name first), runs the command and writes the JSON
/// report if requested.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                report: Report::new("usage"),
                usage: Some(e.render().to_string()),
                quiet: false,
            };
        }
    };
    let echo = echo(&argv);
    let g = cli.global.clone();
    let mut outcome = match dispatch(&cli, echo.clone()) {
        Ok(report) => Outcome::from_report(report, g.quiet),
        Err(e) => Outcome::input_error(Report::new(echo), e, g.quiet),
    };
    if let Some(path) = &g.json {
        if let Err(e) = std::fs::write(path, outcome.report.to_json()) {
            outcome
                .report
                .note(format!("error: cannot write {}: {e}", path.display()));
            outcome.code = 2;
        }
    }
    outcome
}

/// The command line without the program name and output-only flags.
fn echo(argv: &[std::ffi::OsString]) -> String {
    let mut parts = Vec::new();
    let mut skip = false;
    for a in argv.iter().skip(1) {
        let a = a.to_string_lossy();
        if skip {
            skip = false;
            continue;
        }
        if a == "--json" {
            skip = true;
            continue;
        }
        if a.starts_with("--json=") || a == "--quiet" {
            continue;
        }
        parts.push(a.into_owned());
    }
    parts.join(" ")
}

fn dispatch(cli: &Cli, echo: String) -> Result<Report, AlgebraError> {
    let g = &cli.global;
    match &cli.command {
        Command::Lyndon { op } => match op {
            LyndonOp::Decompose(w) => commands::lyndon_decompose(echo, w),
            LyndonOp::Check(w) => commands::lyndon_check(echo, w),
            LyndonOp::Bracket(w) => commands::lyndon_bracket(echo, w, g),
        },
        Command::Gb { file } => commands::gb(echo, &commands::load(file, g)?),
        Command::Basis { file, degree, kind } => commands::basis(echo, &commands::load(file, g)?, *degree, *kind),
        Command::Hilbert { file } => commands::hilbert(echo, &commands::load(file, g)?),
        Command::Verify { file } => commands::verify(echo, &commands::load(file, g)?),
        Command::HopfCheck { file } => commands::hopf_check(echo, &commands::load(file, g)?),
        Command::Ihoe { file } => commands::ihoe(echo, &commands::load(file, g)?),
        Command::LieGens { file } => commands::lie_gens(echo, &commands::load(file, g)?),
        Command::Heights { file } => commands::heights(echo, &commands::load(file, g)?),
    }
}
