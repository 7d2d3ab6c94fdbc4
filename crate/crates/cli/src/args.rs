use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sticks",
    version,
    about = "Exact and simulated polygon probabilities for random sticks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact closed-form probability.
    Compute(ComputeArgs),
    /// Monte Carlo estimate, alongside the exact value when one exists.
    Simulate(SimulateArgs),
    /// Run the named identity checks and report each one.
    Verify(VerifyArgs),
    /// Exact values over ranges of p and n.
    Table(TableArgs),
    /// Integer sequences and bound constants.
    Constants(ConstantsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    /// No p+1 sticks form a polygon.
    Pn,
    /// Every p+1 sticks form a polygon.
    Pa,
    /// A random p+1 sticks form a polygon.
    Pr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Pickup,
    Broken,
    Exponential,
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantKind {
    /// p-step Fibonacci numbers from the initial block up to index n.
    Fib,
    /// Pick-up stick bound denominators m_1..m_n.
    M,
    /// Broken-stick bound denominators s_1..s_{n-1}.
    S,
    /// Upper-bound forms for l_1..l_{n-1}.
    Emax,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    pub problem: Problem,
    #[arg(long, value_enum, default_value_t = ModelArg::Pickup)]
    pub model: ModelArg,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub n: Option<usize>,
    /// Lower end of the truncated uniform law, as num/den.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub digits: usize,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub problem: Problem,
    #[arg(long, value_enum, default_value_t = ModelArg::Pickup)]
    pub model: ModelArg,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads; defaults to STICKS_WORKERS or the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub a: Option<String>,
    /// Exponential rate, as num/den.
    #[arg(long)]
    pub rate: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub digits: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 200_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    pub problem: Problem,
    #[arg(long, value_enum, default_value_t = ModelArg::Pickup)]
    pub model: ModelArg,
    /// Inclusive range lo:hi, or a single value.
    #[arg(long)]
    pub p: String,
    /// Inclusive range lo:hi, or a single value.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub digits: usize,
    /// Leave out the decimal column.
    #[arg(long)]
    pub no_decimal: bool,
    #[arg(long, value_enum, default_value_t = Output::Csv)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    pub kind: ConstantKind,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub n: usize,
    /// Bound model for `emax`.
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
}
