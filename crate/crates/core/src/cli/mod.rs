//! Command-line front end: argument definitions, dispatch and rendering.

mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::error::Error;
use crate::exactalg::FieldSpec;
use crate::resolver::OracleMethod;

#[derive(Parser, Debug)]
#[command(
    name = "bettiforge",
    version,
    about = "Betti tables, Hilbert series and Lefschetz checks for ideals of powers of linear forms"
)]
pub struct Cli {
    /// Coefficient field: `rational`, `prime`, `paranoid`, or a prime `p`.
    #[arg(long, global = true, env = "BETTIFORGE_FIELD", default_value = "prime")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert series.
    #[command(subcommand)]
    Hilbert(HilbertCmd),
    /// Graded Betti tables.
    #[command(subcommand)]
    Betti(BettiCmd),
    /// Hilbert function and minimal generators of `(gens) : f`.
    Colon(ColonArgs),
    /// Annihilator of a dual form.
    Annihilator(AnnihilatorArgs),
    /// Generators of the annihilator of an elementary symmetric form.
    #[command(subcommand)]
    Esym(EsymCmd),
    /// Maximal-rank check of powers of a linear form.
    Lefschetz(LefschetzArgs),
    /// Structural checks on ideals with a square generator.
    #[command(subcommand)]
    Check(CheckCmd),
}

#[derive(Args, Debug, Clone)]
pub struct SequenceArgs {
    /// Powers of the variables, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<u32>,
    /// Power of `x1 + ... + xn`.
    #[arg(long)]
    pub ell_power: u32,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArgs {
    #[arg(long)]
    pub nvars: usize,
    /// Comma separated generators, e.g. `x1^2, x2^2, (x1+x2)^2`.
    #[arg(long)]
    pub gens: String,
}

#[derive(Subcommand, Debug)]
pub enum HilbertCmd {
    /// Complete intersection of the variable powers.
    Ci {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    /// Truncated series of `r` generic forms in `n` variables.
    Froberg {
        #[arg(long)]
        nvars: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    /// The Gorenstein algebra linked through the power of `l`.
    Linked(SequenceArgs),
    /// Computed Hilbert function of `R/(gens)`.
    Quotient(IdealArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormulaKind {
    Aci,
    Gorenstein,
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Aci,
    Gorenstein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Koszul,
    Syzygies,
}

impl From<MethodArg> for OracleMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Koszul => OracleMethod::KoszulHomology,
            MethodArg::Syzygies => OracleMethod::IteratedSyzygies,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum BettiCmd {
    /// Closed-form table.
    Formula {
        #[arg(value_enum)]
        kind: FormulaKind,
        #[command(flatten)]
        seq: SequenceArgs,
        /// For `sum`: which quotient.
        #[arg(long, value_enum, default_value_t = Target::Aci)]
        target: Target,
        /// Recompute with the oracle and compare entrywise.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Koszul)]
        method: MethodArg,
    },
    /// Table computed by exact linear algebra.
    Oracle {
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u32>>,
        #[arg(long)]
        ell_power: Option<u32>,
        #[arg(long, value_enum, default_value_t = Target::Aci)]
        target: Target,
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Koszul)]
        method: MethodArg,
    },
}

#[derive(Args, Debug)]
pub struct ColonArgs {
    #[command(flatten)]
    pub ideal: IdealArgs,
    /// The form to divide by.
    #[arg(long)]
    pub by: String,
}

#[derive(Args, Debug)]
pub struct AnnihilatorArgs {
    #[arg(long)]
    pub nvars: usize,
    /// Dual form in `X1..Xn` (or `x1..xn`).
    #[arg(long)]
    pub form: String,
}

#[derive(Subcommand, Debug)]
pub enum EsymCmd {
    /// Squares plus the orbit of the paired product.
    Gens {
        #[arg(long)]
        nvars: usize,
        #[arg(long)]
        d: usize,
        /// Also compare with the colon ideal.
        #[arg(long)]
        verify: bool,
    },
    /// Number of squarefree leading monomials.
    Count {
        #[arg(long)]
        nvars: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraKind {
    Ci,
    Aci,
    Gorenstein,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Weak,
    Strong,
}

#[derive(Args, Debug)]
pub struct LefschetzArgs {
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<u32>>,
    #[arg(long)]
    pub ell_power: Option<u32>,
    #[arg(long, value_enum, default_value_t = AlgebraKind::Gorenstein)]
    pub kind: AlgebraKind,
    #[arg(long)]
    pub nvars: Option<usize>,
    #[arg(long)]
    pub gens: Option<String>,
    /// Annihilator of this dual form instead of an ideal.
    #[arg(long)]
    pub dual: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Strong)]
    pub mode: ModeArg,
    /// Coefficients of the linear form, comma separated; default all ones.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub linear: Option<Vec<i64>>,
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Weighted syzygy combinations lie in the ideal.
    Syzygy {
        #[command(flatten)]
        seq: SequenceArgs,
        /// Largest syzygy degree checked; default `2 max d + 2`.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Zero set of the lifted forms.
    PointSet(SequenceArgs),
    /// Regularity of the square variable on the lifted quotients and the
    /// colon identities.
    Regular(SequenceArgs),
    /// Seeded random draws of generic forms with a quadric.
    GenericLevel {
        #[arg(long)]
        nvars: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        draws: usize,
    },
}

/// Failures mapped to exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Algebra(#[from] Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Algebra(e) if e.is_internal() => 2,
            CliError::Algebra(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

impl From<crate::exactalg::ExactAlgError> for CliError {
    fn from(e: crate::exactalg::ExactAlgError) -> Self {
        CliError::Algebra(e.into())
    }
}

impl From<crate::polyring::PolyError> for CliError {
    fn from(e: crate::polyring::PolyError) -> Self {
        CliError::Algebra(e.into())
    }
}

/// Text, JSON and (when meaningful) CSV renderings of one result.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub text: String,
    pub json: serde_json::Value,
    pub csv: Option<String>,
}

impl Rendered {
    fn emit(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json value") + "\n"),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Usage("no CSV rendering for this command".into())),
        }
    }
}

/// Parse arguments, run, and write the output; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = cli
        .field
        .parse::<FieldSpec>()
        .map_err(CliError::from)
        .and_then(|field| commands::dispatch(&cli.command, field))
        .and_then(|r| r.emit(cli.format));
    match result {
        Ok(s) => {
            let _ = write!(out, "{s}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
