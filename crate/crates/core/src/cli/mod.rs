//! The `gradus` command line.
//!
//! Each subcommand maps onto one library operation and emits an
//! [`ExperimentReport`](crate::report::Report) as text or JSON.
//!
//! Exit codes: 0 when a verdict was computed (including negative or
//! inconclusive ones), 1 for usage errors and malformed input, 2 for
//! violated preconditions, 3 for internal invariant breaches.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::field::FieldConfig;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "gradus",
    version,
    about = "Exact Jacobian ideals, apolarity and Lefschetz checks for graded polynomial rings",
    after_help = "Polynomial arguments accept inline text, @path or an existing file path, \
                  random:<degree> (seeded) or special:<degree>."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Coefficient field: rational or fp:<p>.
    #[arg(long, global = true, env = "GRADUS_FIELD", default_value = "rational")]
    pub field: String,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Bound on the absolute value of random integer coefficients.
    #[arg(long = "coeff-bound", global = true, default_value_t = 10)]
    pub coeff_bound: u64,
    /// Largest degree for degree sweeps.
    #[arg(long, global = true, default_value_t = 12)]
    pub kmax: u32,
    /// Budget for randomized searches.
    #[arg(long, global = true, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Number of variables x0..x{n} of the polynomial ring.
    #[arg(long, global = true, default_value_t = 5)]
    pub nvars: usize,
    /// Add wall-clock time to the report (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PolyArg {
    /// The form F.
    #[arg(long = "poly", short = 'f', visible_alias = "f", allow_hyphen_values = true)]
    pub poly: String,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// The form F.
    #[arg(long = "f", short = 'f', visible_alias = "poly", allow_hyphen_values = true)]
    pub f: String,
    /// The form Q.
    #[arg(long = "q", short = 'q', allow_hyphen_values = true)]
    pub q: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function dim M(F)_k for k = 0..kmax.
    MilnorDims(PolyArg),
    /// Smoothness of the hypersurface F = 0.
    Smooth(PolyArg),
    /// Smoothness of the complete intersection F = Q = 0.
    CiSmooth {
        #[command(flatten)]
        pair: PairArgs,
        /// Allow degrees and variable counts other than a cubic and a quadric in 5 variables.
        #[arg(long)]
        general: bool,
        /// Prime for the singular-point search when no degree certifies.
        #[arg(long = "search-prime", default_value_t = 7)]
        search_prime: u64,
    },
    /// Perp of a span of forms, or of J_{F,k}, under the polar pairing.
    Perp {
        /// Spanning forms (repeatable); x-forms give a y-perp and vice versa.
        #[arg(long = "poly", short = 'f', allow_hyphen_values = true)]
        polys: Vec<String>,
        /// Use J_{F,k} for this F instead of explicit forms.
        #[arg(long, allow_hyphen_values = true)]
        jacobian: Option<String>,
        /// Degree k; inferred from the forms when omitted.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Graded colon (J_F : Q)_k.
    Colon {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        k: u32,
    },
    /// The cubic C of the pair (F, Q).
    ExtractC(PairArgs),
    /// Socle functional and the multiplication pairing M(F)_j x M(F)_{T-j}.
    SoclePairing {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, default_value_t = 2)]
        j: u32,
    },
    /// Defect of a point set in degree k.
    Defect {
        /// Point-set file (one point per line, comma-separated), @path or inline with ';'.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long)]
        k: u32,
    },
    /// dim M(F)_{T-k} = dim M(F_s)_k + defect_k for the singular points of F.
    LemmaDefect {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long)]
        k: u32,
    },
    /// The special cubic sum of x_i x_j x_k.
    SpecialQ {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: u32,
    },
    /// All singular points of F modulo a small prime.
    SingularSearch {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, default_value_t = 7)]
        prime: u64,
    },
    /// Whether a singular point is a node.
    NodeCheck {
        #[command(flatten)]
        poly: PolyArg,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Chart coordinate; defaults to the first nonzero one.
        #[arg(long)]
        chart: Option<usize>,
    },
    /// Strong Lefschetz check for a given linear form, or a seeded search.
    Lefschetz {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        ell: Option<String>,
    },
    /// Search (J_{F,3})^perp for a smooth cubic.
    MembershipU(PolyArg),
    /// Build a pair (F, Q) whose cubic C is a given smooth apolar cubic G.
    ConstructPair {
        #[command(flatten)]
        poly: PolyArg,
        /// Witness G in y variables; found by membership-u when omitted.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long = "max-perturbations", default_value_t = 10)]
        max_perturbations: usize,
    },
    /// Check the three corollary items for a pair (F, Q).
    VerifyCorollary(PairArgs),
    /// Injectivity of l^2 and of a general Q from M(F)_1 to M(F)_3.
    Theorem14(PolyArg),
    /// Deform the special cubic along a random smooth cubic.
    Deformation {
        #[arg(long, default_value_t = 4)]
        steps: u32,
    },
    /// Golden checks for the special cubic in five variables.
    ReproduceExample,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::MilnorDims(_) => "milnor-dims",
            Command::Smooth(_) => "smooth",
            Command::CiSmooth { .. } => "ci-smooth",
            Command::Perp { .. } => "perp",
            Command::Colon { .. } => "colon",
            Command::ExtractC(_) => "extract-c",
            Command::SoclePairing { .. } => "socle-pairing",
            Command::Defect { .. } => "defect",
            Command::LemmaDefect { .. } => "lemma-defect",
            Command::SpecialQ { .. } => "special-q",
            Command::SingularSearch { .. } => "singular-search",
            Command::NodeCheck { .. } => "node-check",
            Command::Lefschetz { .. } => "lefschetz",
            Command::MembershipU(_) => "membership-u",
            Command::ConstructPair { .. } => "construct-pair",
            Command::VerifyCorollary(_) => "verify-corollary",
            Command::Theorem14(_) => "theorem14",
            Command::Deformation { .. } => "deformation",
            Command::ReproduceExample => "reproduce-example",
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => 3,
        Error::Syntax { .. }
        | Error::WrongFamily { .. }
        | Error::VariableOutOfRange { .. }
        | Error::InvalidField(_)
        | Error::NotRepresentable(_)
        | Error::PointFormat { .. }
        | Error::Io(_) => 1,
        _ => 2,
    }
}

/// A finished command: the report and the exit code to use.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> crate::Result<Outcome> {
    let field: FieldConfig = cli.global.field.parse()?;
    if cli.global.nvars == 0 {
        return Err(Error::OutOfRange("--nvars must be at least 1".into()));
    }
    let start = Instant::now();
    let mut outcome = match field {
        FieldConfig::Rational => commands::run(crate::field::Rationals, cli),
        FieldConfig::Prime(p) => commands::run(crate::field::PrimeField::new(p)?, cli),
    }?;
    if cli.global.timing {
        outcome.report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(outcome)
}

/// Entry point shared by the binary and the tests: parses `args`, runs the
/// command, writes the report to `out` and errors to `err`, and returns the
/// exit code.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let text = match cli.global.output {
                Output::Json => o.report.to_json_string(),
                Output::Text => o.report.to_text(),
            };
            let _ = out.write_all(text.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
