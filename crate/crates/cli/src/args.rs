use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "lct",
    version,
    about = "Linear canonical transforms in the dispersion-operator basis"
)]
pub struct Cli {
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample the basis function phi(n, x) on a uniform grid.
    Basis(BasisArgs),
    /// Apply the unitary LCT to a sampled wavefunction.
    Transform(TransformArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Exponentiate angle parameters to a symplectic matrix.
    Expmap(ExpmapArgs),
    /// Emit a truncated Fock-space operator matrix.
    Rep(RepArgs),
    /// Estimate mean position, momentum and their dispersions.
    Dispersion(DispersionArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Mean position X.
    #[arg(long = "X", default_value_t = 0.0, allow_hyphen_values = true)]
    pub x: f64,
    /// Mean momentum P.
    #[arg(long = "P", default_value_t = 0.0, allow_hyphen_values = true)]
    pub p: f64,
    /// Momentum dispersion B (> 0).
    #[arg(long = "B", default_value_t = 0.5)]
    pub b: f64,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    /// Basis index.
    #[arg(short, long)]
    pub n: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Grid as `lo,hi,count`; defaults to a window covering the function.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    /// Wavefunction CSV (`x,re,im`); `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
    /// JSON file with X, P, B, cutoff, theta_plus, theta_minus, theta_cross.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long = "X", allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long = "P", allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long = "B")]
    pub b: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// `theta_plus,theta_minus,theta_cross`
    #[arg(long, allow_hyphen_values = true)]
    pub angles: Option<String>,
    /// Where to write the before/after dispersion sidecar. Defaults to
    /// `<output>.dispersion.json`, or stderr when writing to stdout.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Symbolic table, e.g. Eq10 or 74. Repeatable.
    #[arg(long)]
    pub table: Vec<String>,
    /// Every symbolic table plus closure and Jacobi.
    #[arg(long)]
    pub all: bool,
    /// Dimension N for the tensor tables [default: 2, or implied by --signature].
    #[arg(long)]
    pub dim: Option<usize>,
    /// Metric signature `n_plus,n_minus`; defaults to Euclidean.
    #[arg(long)]
    pub signature: Option<String>,
    /// Compare U p U† and U x U† with the symplectic action.
    #[arg(long)]
    pub homomorphism: bool,
    /// Compare U b U† with the generator transformation law.
    #[arg(long)]
    pub basis_law: bool,
    /// Truncated Fock-space commutator identities.
    #[arg(long)]
    pub fock: bool,
    #[arg(long, default_value_t = 64)]
    pub cutoff: usize,
    /// `theta_plus,theta_minus,theta_cross`
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub angles: String,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long = "B", default_value_t = 1.0)]
    pub b: f64,
}

#[derive(Args, Debug)]
pub struct ExpmapArgs {
    /// JSON with dim, signature, theta_plus, theta_minus, theta_cross; `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    Zminus,
    Zplus,
    P,
    X,
    Jplus,
    Jminus,
    Jcross,
    SigmaP,
    SigmaX,
}

#[derive(Args, Debug)]
pub struct RepArgs {
    #[arg(long, value_enum)]
    pub op: Operator,
    #[arg(long = "B", default_value_t = 1.0)]
    pub b: f64,
    #[arg(long)]
    pub cutoff: usize,
}

#[derive(Args, Debug)]
pub struct DispersionArgs {
    /// Wavefunction CSV (`x,re,im`); `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
}
