use clap::{Parser, Subcommand};
use distcalc_core::report::{ErrorDetail, ErrorRecord};

use distcalc_cli::commands;
use distcalc_cli::error::{unsupported, CliError};
use distcalc_cli::render::{render, render_error, Format};

/// Symbolic-numeric calculus for distributions: point masses, slow-growth
/// densities, and their derivatives and Fourier transforms.
#[derive(Parser)]
#[command(name = "distcalc", version, max_term_width = 100)]
struct Cli {
    /// Output format for reports and error records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pair a distribution with a test function.
    Eval {
        dist: String,
        testfn: String,
        /// Pairing tolerance (default 1e-8, or DISTCALC_TOL).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the canonical Fourier transform of a distribution.
    Ft { dist: String },
    /// Print the canonical derivative of a distribution.
    Diff {
        dist: String,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Recover a density's balanced value at a point by mollified pairings.
    Recover {
        dist: String,
        /// Recovery location.
        #[arg(long, allow_hyphen_values = true)]
        at: f64,
        /// Even, unit-mass test-function expression.
        #[arg(long)]
        mollifier: Option<String>,
        /// Scale schedule (default 4,16,64,256).
        #[arg(long, value_delimiter = ',')]
        ks: Vec<f64>,
        /// Average over shrinking windows instead of mollifying.
        #[arg(long)]
        window: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Track mollified values along a scale schedule and fit a growth exponent.
    Witness {
        dist: String,
        #[arg(long, allow_hyphen_values = true)]
        at: f64,
        #[arg(long)]
        mollifier: String,
        #[arg(long, value_delimiter = ',')]
        ks: Vec<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Probe two distributions with a test family and report separation.
    Probe {
        left: String,
        right: String,
        /// gauss (modulated Gaussians), exp (transform values), or box (windows).
        #[arg(long)]
        family: String,
        /// Modulation frequencies for the gauss family.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        omegas: Vec<f64>,
        /// Generic parameter list (box windows take a,b pairs).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compute the seminorm sup |x^m φ^(n)(x)| of a test function.
    Seminorm {
        testfn: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Numeric verification of the calculus' defining identities.
    Check {
        #[command(subcommand)]
        check: CheckCmd,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Transform pairing: integral of f̂·φ against integral of f·φ̂.
    Gpf {
        f: String,
        testfn: String,
        /// Cross-check tolerance (default 1e-6, or DISTCALC_TOL).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Integration by parts: integral of f′·φ against −integral of f·φ′.
    Ibp {
        f: String,
        testfn: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Transform-side seminorm decrease along φ_k = φ/k, plus the stated
    /// C00 bound on the image.
    Ftic {
        testfn: String,
        /// Scale schedule (default 1,2,4,8).
        #[arg(long, value_delimiter = ',')]
        ks: Vec<f64>,
        /// Largest seminorm index measured on the image.
        #[arg(long, default_value_t = 2)]
        cap: u32,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Validate a catalog function's polynomial growth certificate.
    Growth { f: String },
}

impl Cmd {
    fn op(&self) -> &'static str {
        match self {
            Cmd::Eval { .. } => "eval",
            Cmd::Ft { .. } => "ft",
            Cmd::Diff { .. } => "diff",
            Cmd::Recover { .. } => "recover",
            Cmd::Witness { .. } => "witness",
            Cmd::Probe { .. } => "probe",
            Cmd::Seminorm { .. } => "seminorm",
            Cmd::Check { check } => match check {
                CheckCmd::Gpf { .. } => "check.gpf",
                CheckCmd::Ibp { .. } => "check.ibp",
                CheckCmd::Ftic { .. } => "check.ftic",
                CheckCmd::Growth { .. } => "check.growth",
            },
        }
    }
}

const PAIRING_TOL: f64 = 1e-8;
const CROSS_CHECK_TOL: f64 = 1e-6;

/// Flag beats the DISTCALC_TOL environment variable beats the default.
fn resolve_tol(flag: Option<f64>, default: f64) -> Result<f64, CliError> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("DISTCALC_TOL") {
            Ok(text) => text.trim().parse::<f64>().map_err(|_| {
                unsupported(format!("DISTCALC_TOL is not a number: `{text}`"))
            })?,
            Err(_) => default,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(unsupported("tolerance must be positive and finite"));
    }
    Ok(tol)
}

fn default_ks(ks: Vec<f64>, fallback: &[f64]) -> Vec<f64> {
    if ks.is_empty() {
        fallback.to_vec()
    } else {
        ks
    }
}

fn run(cmd: Cmd) -> Result<distcalc_core::Report, CliError> {
    match cmd {
        Cmd::Eval { dist, testfn, tol } => {
            commands::cmd_eval(&dist, &testfn, resolve_tol(tol, PAIRING_TOL)?)
        }
        Cmd::Ft { dist } => commands::cmd_ft(&dist),
        Cmd::Diff { dist, order } => commands::cmd_diff(&dist, order),
        Cmd::Recover {
            dist,
            at,
            mollifier,
            ks,
            window,
            tol,
        } => commands::cmd_recover(
            &dist,
            at,
            mollifier.as_deref(),
            &default_ks(ks, &[4.0, 16.0, 64.0, 256.0]),
            window,
            resolve_tol(tol, PAIRING_TOL)?,
        ),
        Cmd::Witness {
            dist,
            at,
            mollifier,
            ks,
            tol,
        } => commands::cmd_witness(
            &dist,
            at,
            &mollifier,
            &default_ks(ks, &[4.0, 16.0, 64.0, 256.0]),
            resolve_tol(tol, PAIRING_TOL)?,
        ),
        Cmd::Probe {
            left,
            right,
            family,
            omegas,
            params,
            tol,
        } => {
            let chosen = if params.is_empty() { omegas } else { params };
            commands::cmd_probe(
                &left,
                &right,
                &family,
                &chosen,
                resolve_tol(tol, PAIRING_TOL)?,
            )
        }
        Cmd::Seminorm { testfn, m, n } => commands::cmd_seminorm(&testfn, m, n),
        Cmd::Check { check } => match check {
            CheckCmd::Gpf { f, testfn, tol } => {
                commands::cmd_check_gpf(&f, &testfn, resolve_tol(tol, CROSS_CHECK_TOL)?)
            }
            CheckCmd::Ibp { f, testfn, tol } => {
                commands::cmd_check_ibp(&f, &testfn, resolve_tol(tol, PAIRING_TOL)?)
            }
            CheckCmd::Ftic { testfn, ks, cap, tol } => commands::cmd_check_ftic(
                &testfn,
                &default_ks(ks, &[1.0, 2.0, 4.0, 8.0]),
                cap,
                resolve_tol(tol, CROSS_CHECK_TOL)?,
            ),
            CheckCmd::Growth { f } => commands::cmd_check_growth(&f),
        },
    }
}

fn main() {
    let cli = Cli::parse();
    let op = cli.cmd.op();
    match run(cli.cmd) {
        Ok(report) => print!("{}", render(&report, cli.format)),
        Err(err) => {
            let record = ErrorRecord {
                op: op.to_string(),
                error: ErrorDetail {
                    kind: err.kind().to_string(),
                    message: err.to_string(),
                },
            };
            print!("{}", render_error(&record, cli.format));
            std::process::exit(1);
        }
    }
}
