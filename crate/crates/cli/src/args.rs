use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "racahkit", version, about = "Exact verification of the Bargmann and Barut-Girardello Racah algebra models")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Number of tensor factors.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Polynomial degree.
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// Model; both models are run when omitted.
    #[arg(long, global = true, value_enum)]
    pub model: Option<Model>,
    /// Subset of tensor factors, e.g. `1,2`.
    #[arg(long, global = true)]
    pub subset: Option<String>,
    /// Parameter value `i=p/q` for nu_i (repeatable).
    #[arg(long = "nu", global = true, value_name = "I=P/Q")]
    pub nu: Vec<String>,
    /// Degree bound for monomial-level checks.
    #[arg(long, global = true)]
    pub degree: Option<u32>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Emit::Json)]
    pub emit: Emit,
    /// Leave out wall-clock timings so identical configs give identical bytes.
    #[arg(long, global = true)]
    pub deterministic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Bargmann,
    Bg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Standard,
    Permuted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Explicit {
    Jacobi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Su11,
    Commute,
    Rank1,
    Linear,
    Chain,
    Centrality,
    All,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// su(1,1) brackets of the realization on one subset (or all subsets).
    Su11 {
        /// Include the printed operators and Casimir in the report.
        #[arg(long)]
        emit_op: bool,
    },
    /// Racah algebra identities.
    Racah {
        #[command(subcommand)]
        action: VerifyAction<RacahVerify>,
    },
    /// Chain basis of the harmonic space with eigenvalues.
    Basis {
        #[arg(long, value_enum, default_value_t = Order::Standard)]
        order: Order,
        /// Also compare against an explicit closed form.
        #[arg(long, value_enum)]
        explicit: Option<Explicit>,
    },
    /// Printed reduced operators against the gauged Casimirs.
    Reduced {
        #[command(subcommand)]
        action: VerifyAction<ReducedVerify>,
    },
    /// Laplace transform intertwining and basis mapping.
    Laplace {
        #[command(subcommand)]
        action: VerifyAction<Empty>,
    },
    /// Reduction of the lowering operator to the Miller Hamiltonian.
    Miller {
        #[command(subcommand)]
        action: ReduceAction,
    },
    /// Every suite at one size.
    All {
        /// Allow n or k above 4.
        #[arg(long)]
        no_cap: bool,
    },
    /// Compare two JSON reports, ignoring timings.
    Compare { a: PathBuf, b: PathBuf },
}

#[derive(Debug, Clone, Subcommand)]
pub enum VerifyAction<T: Args> {
    Verify(T),
}

#[derive(Debug, Clone, Subcommand)]
pub enum ReduceAction {
    Reduce,
}

#[derive(Debug, Clone, Args)]
pub struct Empty {}

#[derive(Debug, Clone, Args)]
pub struct RacahVerify {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
}

#[derive(Debug, Clone, Args)]
pub struct ReducedVerify {
    /// Every pair {i,j}; otherwise `--subset` or {1,2}.
    #[arg(long)]
    pub all_pairs: bool,
}
