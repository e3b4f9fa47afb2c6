use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qvar",
    version,
    about = "Seeded batch runs over spin operators, Born probabilities, CHSH and inference experiments"
)]
pub struct Cli {
    /// Seed for every random draw; required by stochastic runs
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sample, trial or case count
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML or JSON file with default values; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Run on one thread
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spin-r operators: relation residuals, coherent states, resolution of identity
    Spin(SpinArgs),
    /// Spin-½ transition probabilities and the singlet joint law
    Born(BornArgs),
    /// Simulated CHSH run with exact and grid-search comparisons
    Chsh(ChshArgs),
    /// Quantum and Bayesian answers for the four-treatment comparison
    Medical(MedicalArgs),
    /// POVMs and updates from a statistical model, or a random-case sweep
    Measure(MeasureArgs),
    /// Credibility against coverage for the normal translation model
    Inference(InferenceArgs),
    /// Orbits and permissibility for a finite action, or the built-in fixtures
    Groups(GroupsArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spin(_) => "spin",
            Command::Born(_) => "born",
            Command::Chsh(_) => "chsh",
            Command::Medical(_) => "medical",
            Command::Measure(_) => "measure",
            Command::Inference(_) => "inference",
            Command::Groups(_) => "groups",
        }
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SpinArgs {
    /// Spin quantum number (0, 0.5, 1, ...)
    #[arg(long)]
    pub r: Option<f64>,
    /// Report relation residuals, the full-turn sign and the resolution deviation
    #[arg(long)]
    pub check: bool,
    /// Coherent state and component operator along x,y,z
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub direction: Option<Vec<f64>>,
    /// Relation residuals for every 2r up to this value
    #[arg(long, value_name = "MAX_TWO_R")]
    pub sweep: Option<u32>,
    /// Resolution-of-identity deviation for these r values
    #[arg(long, value_delimiter = ',')]
    pub resolution: Option<Vec<f64>>,
    /// Quadrature nodes beyond the minimum 2r+2
    #[arg(long)]
    pub order_extra: Option<usize>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct BornArgs {
    /// First direction x,y,z (default z)
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Option<Vec<f64>>,
    /// Second direction x,y,z
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Option<Vec<f64>>,
    /// Second direction in the x-z plane, degrees from z
    #[arg(long)]
    pub angle: Option<f64>,
    /// Compare the abstract Born route with ½(1 ± a·b) on --n random pairs
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Args)]
pub struct ChshArgs {
    /// a,a',b,b' in degrees within the x-z plane
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub angles: Option<Vec<f64>>,
    /// Also search angle quadruples on a grid of this many degrees
    #[arg(long)]
    pub grid: Option<f64>,
    /// Write the CSV trial log to this file
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct MedicalArgs {
    /// Run the conditional-sign estimator on a bivariate normal with this correlation
    #[arg(long)]
    pub rho: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// Statistical model JSON
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Accessible variable JSON
    #[arg(long)]
    pub variable: Option<PathBuf>,
    /// State or density JSON (default maximally mixed)
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Random-case sweep over POVMs, instruments and evidence additivity
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct InferenceArgs {
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub c2: Option<f64>,
    /// True location parameter
    #[arg(long)]
    pub theta: Option<f64>,
    /// Additional seeded random (c1, c2) pairs
    #[arg(long)]
    pub random_pairs: Option<usize>,
    /// Also decompose the MSE of the sample mean at this sample size
    #[arg(long, value_name = "SAMPLE_SIZE")]
    pub mse: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GroupsArgs {
    /// Action JSON {order, cayley, space, action}
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// JSON array with one value label per point of the space
    #[arg(long)]
    pub map: Option<PathBuf>,
}
