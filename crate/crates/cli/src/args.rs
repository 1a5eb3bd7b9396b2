use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pimtop", version, about = "Projective indecomposable modules and simple modules of finite-dimensional algebras")]
pub struct Cli {
    /// Seed for every randomized search
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check associativity and the unit
    Validate(Input),
    /// Dimension, labels, commutativity and generators
    Info(Input),
    /// Jacobson radical and its nilpotency index
    Radical(Input),
    /// Indecomposable summands of the regular module or of --module
    Decompose(ModuleInput),
    /// Composition series of the regular module or of --module
    CompSeries(ModuleInput),
    /// Simple modules up to isomorphism
    Simples(Input),
    /// Projective indecomposable modules up to isomorphism
    Pims(Input),
    /// The PIM / simple module correspondence
    Bijection(Input),
    /// Run every consistency check on the correspondence
    Check(Input),
    /// Replay every certificate stored in a JSON report
    VerifyCert {
        report: PathBuf,
    },
    /// Write a built-in example algebra as an algebra file
    Gen {
        /// upper-triangular, full-matrix, cyclic-group, truncated-poly, or a
        /// product such as `ut:2*cyc:3`
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        field: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// Algebra file (JSON)
    pub algebra: Option<PathBuf>,
    /// Use a built-in example instead of a file, e.g. `ut:2`
    #[arg(long, conflicts_with = "algebra")]
    pub example: Option<String>,
    /// Size for --example when the kind has none
    #[arg(long)]
    pub n: Option<usize>,
    /// Field for --example, or reinterpretation of a file's scalars
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Debug, Args)]
pub struct ModuleInput {
    #[command(flatten)]
    pub input: Input,
    /// Module file (JSON); its algebra replaces the algebra input
    #[arg(long)]
    pub module: Option<PathBuf>,
}
