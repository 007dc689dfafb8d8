//! Command line front end for the `hbdmu` toolkit: Pythagorean mates,
//! Fejer-Riesz factorization, potentials, Dirichlet norms, kernel norms,
//! theorem certificates, the example gallery, Clark measures and the
//! self-test suite, with machine-readable JSON (or CSV profile) output.
//!
//! Exit codes: 0 success; 1 domain or validation failure (a structured
//! error object is printed on stdout); 2 a certificate evaluated to
//! `fails` (or the self test failed); 64 malformed command line.

mod commands;
mod descriptor;
mod report;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Error carrying the structured object printed on exit code 1.
#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn parse(message: &str) -> Self {
        Self { kind: "parse".into(), message: message.into() }
    }

    pub fn io(message: &str) -> Self {
        Self { kind: "io".into(), message: message.into() }
    }

    pub fn object(&self) -> serde_json::Value {
        serde_json::json!({"error": {"kind": self.kind, "message": self.message}})
    }
}

impl From<hbdmu::Error> for CliError {
    fn from(e: hbdmu::Error) -> Self {
        let kind = match &e {
            hbdmu::Error::Domain(_) => "domain",
            hbdmu::Error::Invalid(_) => "invalid",
            hbdmu::Error::PoleInDisk { .. } => "pole_in_disk",
            hbdmu::Error::Extreme(_) => "extreme",
            hbdmu::Error::NotContractive { .. } => "not_contractive",
            hbdmu::Error::Negative { .. } => "negative",
            hbdmu::Error::Pairing(_) => "pairing",
            hbdmu::Error::RootFinding(_) => "root_finding",
        };
        Self { kind: kind.into(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Boundary grid size (power of two). Defaults to 4096, or 8192 for
    /// certification; the HBDMU_GRID_SIZE environment variable overrides
    /// the default when the flag is absent.
    #[arg(long, global = true)]
    pub grid_size: Option<usize>,

    /// Number of disk-grid radii.
    #[arg(long, global = true, default_value_t = 64)]
    pub radii: usize,

    /// Number of disk-grid angles per radius.
    #[arg(long, global = true, default_value_t = 512)]
    pub angles: usize,

    /// Spectrum detection tolerance: `|b| >= 1 - tol` counts as outside.
    #[arg(long, global = true, default_value_t = 1e-4)]
    pub spectrum_tol: f64,

    /// Boundary residual tolerance for pair validation.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub residual_tol: f64,

    /// Output format: a JSON report or a CSV evidence profile.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,

    /// Seed for randomized corpora (selftest).
    #[arg(long, global = true, default_value_t = 0x5eed_0001)]
    pub seed: u64,
}

/// How a pair is specified on the command line.
#[derive(Debug, Clone, Args)]
pub struct PairOpts {
    /// Gallery pair: sarason | costara-ransford | poly-type | exponential,
    /// or `file` together with --pair-file.
    #[arg(long)]
    pub pair: Option<String>,

    /// Anchor point for the Sarason pair, as `re,im`.
    #[arg(long)]
    pub zeta: Option<String>,

    /// Atom list `re,im;re,im;...` or `roots_of_unity:N`.
    #[arg(long)]
    pub atoms: Option<String>,

    /// Zero multiplicities for poly-type pairs, comma separated.
    #[arg(long)]
    pub mults: Option<String>,

    /// Exponent degree N for the exponential pair.
    #[arg(long)]
    pub n: Option<usize>,

    /// JSON file with `{"b": descriptor, "a": descriptor}`.
    #[arg(long)]
    pub pair_file: Option<String>,
}

#[derive(Debug, Parser)]
#[command(name = "hbdmu", version, about = "de Branges-Rovnyak / weighted Dirichlet space toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the Pythagorean mate of b from a descriptor or a log-modulus
    /// profile CSV (rows `theta,value`).
    Mate {
        /// Function descriptor JSON file for b.
        #[arg(long)]
        b_file: Option<String>,
        /// CSV profile `theta,value` of boundary log-modulus data.
        #[arg(long)]
        profile_csv: Option<String>,
    },
    /// Fejer-Riesz factorization of a non-negative trigonometric polynomial.
    Factor {
        /// Coefficients `re,im;...` ascending from c_{-n} (length 2n+1).
        #[arg(long)]
        coeffs: String,
        /// Degree n.
        #[arg(long)]
        n: usize,
    },
    /// Potential V_mu and Poisson integral P_mu at a point.
    Potential {
        #[arg(long)]
        mu: String,
        /// Evaluation point `re,im` (anywhere in the plane).
        #[arg(long)]
        z: String,
    },
    /// `D_mu` norm of a function: H^2 part plus Dirichlet integral.
    Dnorm {
        #[arg(long)]
        f_file: String,
        #[arg(long)]
        mu: String,
        /// Quadrature form for the Dirichlet part.
        #[arg(long, default_value = "boundary")]
        form: String,
    },
    /// Closed-form kernel norms at a disk point.
    KernelNorms {
        #[arg(long)]
        mu: String,
        /// Disk point `re,im`.
        #[arg(long)]
        w: String,
        #[command(flatten)]
        pair: PairOpts,
    },
    /// Certify one of the structure theorems.
    Certify {
        /// A | B | C | D | continuous | clark | corona
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        pair: PairOpts,
        #[arg(long)]
        mu: Option<String>,
        /// Clark parameter `re,im` on the circle (theorem = clark).
        #[arg(long)]
        lambda: Option<String>,
        /// First function file (theorem = corona).
        #[arg(long)]
        f1_file: Option<String>,
        /// Second function file (theorem = corona).
        #[arg(long)]
        f2_file: Option<String>,
    },
    /// Construct a gallery pair and report its validation data.
    Example {
        /// sarason | costara-ransford | poly-type | exponential
        which: String,
        #[command(flatten)]
        pair: PairOpts,
    },
    /// Clark-measure absolute continuity check for a polynomial-type pair.
    Clark {
        #[command(flatten)]
        pair: PairOpts,
        /// Clark parameter `re,im` on the circle.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Run the full acceptance suite.
    Selftest,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(64);
        }
    };
    match commands::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            use std::io::Write;
            let text = serde_json::to_string_pretty(&err.object()).expect("error serializes");
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            std::process::exit(1);
        }
    }
}
