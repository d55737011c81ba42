use clap::{Args, Parser, Subcommand, ValueEnum};
use heunlim::limiting::LimitingTolerances;
use serde_json::{json, Value};

use crate::emit::num;

#[derive(Parser, Debug)]
#[command(name = "heunlim", version, about = "Algebraic Heun operators and discrete time-and-band limiting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,

    /// Seed for randomized suites; HEUNLIM_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spectrum of the limiting operator by the direct and commuting routes.
    Solve(Limit),
    /// Run an invariant suite.
    Verify(VerifyArgs),
    /// Discrete kernel by each route.
    Kernel(Limit),
    /// Limiting and commuting-operator spectra with the clustering diagnostic.
    Spectrum(Limit),
    /// Tridiagonal action of a Jacobi-type Heun operator and degree-raising checks.
    HeunAction(Heun),
    /// Closure fits for the Jacobi, Hahn, cubic and embedded Racah relations.
    AlgebraCheck(Heun),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Verify(_) => "verify",
            Command::Kernel(_) => "kernel",
            Command::Spectrum(_) => "spectrum",
            Command::HeunAction(_) => "heun-action",
            Command::AlgebraCheck(_) => "algebra-check",
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Family {
    /// Grid size; the grid is 0..=N.
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Limit {
    #[command(flatten)]
    pub family: Family,
    /// Time cutoff, defaults to N/2.
    #[arg(long)]
    pub j1: Option<usize>,
    /// Band cutoff, defaults to N/2.
    #[arg(long)]
    pub j2: Option<usize>,
}

impl Limit {
    pub fn cutoffs(&self) -> (usize, usize) {
        let half = self.family.n / 2;
        (self.j1.unwrap_or(half), self.j2.unwrap_or(half))
    }
}

pub const DEFAULT_TAU: [f64; 5] = [0.25, 1.0, -0.5, 0.75, 0.5];

#[derive(Args, Debug, Clone)]
pub struct Heun {
    #[command(flatten)]
    pub family: Family,
    /// τ₀ τ₁ τ₂ τ₃ τ₄.
    #[arg(long, num_args = 5, allow_negative_numbers = true)]
    pub tau: Option<Vec<f64>>,
    /// Degree cutoff of the monomial realization.
    #[arg(long, default_value_t = 12)]
    pub k: usize,
    /// γ and ε of the W± pair.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.25, allow_negative_numbers = true)]
    pub epsilon: f64,
}

impl Heun {
    pub fn tau(&self) -> [f64; 5] {
        match &self.tau {
            Some(t) => [t[0], t[1], t[2], t[3], t[4]],
            None => DEFAULT_TAU,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Orthopoly,
    Heun,
    Algebra,
    Limiting,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Tolerances {
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol_projection: f64,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_kernel: f64,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_commutator: f64,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_block: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_degeneracy: f64,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_angle_gap: f64,
    /// Via-commuting-operator against direct eigenvalues.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_eigenvalue: f64,
    /// Largest principal angle between eigenvector routes.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol_angle: f64,
    /// Off-tridiagonal mass relative to the Frobenius norm.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_leakage: f64,
    /// Gaps between extracted and closed-form action coefficients, relative.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_action: f64,
    /// Relative size of coefficients above the raised degree.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol_degree: f64,
    /// Relative residual of closure fits.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_closure: f64,
    /// Polynomial and grid identities in the orthopoly suite.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_identity: f64,
}

impl Tolerances {
    pub fn limiting(self) -> LimitingTolerances {
        LimitingTolerances {
            projection: self.tol_projection,
            kernel: self.tol_kernel,
            commutator: self.tol_commutator,
            block: self.tol_block,
            degeneracy: self.tol_degeneracy,
            angle_gap: self.tol_angle_gap,
        }
    }

    pub fn to_json(self) -> Value {
        json!({
            "projection": num(self.tol_projection),
            "kernel": num(self.tol_kernel),
            "commutator": num(self.tol_commutator),
            "block": num(self.tol_block),
            "degeneracy": num(self.tol_degeneracy),
            "angle_gap": num(self.tol_angle_gap),
            "eigenvalue": num(self.tol_eigenvalue),
            "angle": num(self.tol_angle),
            "leakage": num(self.tol_leakage),
            "action": num(self.tol_action),
            "degree": num(self.tol_degree),
            "closure": num(self.tol_closure),
            "identity": num(self.tol_identity),
        })
    }
}
