use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "forcing",
    version,
    about = "Ordinals, well-orders, forcing posets and Boolean completions"
)]
pub struct Cli {
    /// Print the report as a JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinal arithmetic below epsilon_0.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Finite relations and well-orders.
    #[command(subcommand)]
    Wo(WoCmd),
    /// Finite posets, the binary-condition poset and regular open algebras.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Almost disjoint families and their forcing poset.
    #[command(subcommand)]
    Ad(AdCmd),
}

#[derive(Debug, Subcommand)]
pub enum OrdCmd {
    /// Evaluate an expression over naturals, `w`, `+`, `*`, `^` and parentheses.
    Eval { expr: String },
}

#[derive(Debug, Subcommand)]
pub enum WoCmd {
    /// Report partial, total and well-order properties of a relation file.
    Check { file: PathBuf },
    /// Compare two well-orders and print the isomorphism.
    Trichotomy { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum PosetCmd {
    /// Load a poset and classify its named sets.
    Check { file: PathBuf },
    /// Test whether a named set is dense.
    Dense {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Build a filter meeting the given dense sets.
    Generic {
        /// `k` for finite binary conditions, or a poset file.
        #[arg(long)]
        poset: String,
        /// For `k`: `d<n>` and `e:<bits>`; for a file: names of its sets.
        #[arg(long, value_delimiter = ',', required = true)]
        dense: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        fuel: usize,
        /// Starting element of a poset file; defaults to its first element.
        #[arg(long)]
        start: Option<String>,
    },
    /// The regular open algebra and the embedding of the poset.
    Ro {
        file: PathBuf,
        /// Print the Hasse diagram in Graphviz dot syntax instead.
        #[arg(long)]
        dot: bool,
    },
    /// Ultrafilters of the regular open algebra and the basic opens.
    Stone {
        file: PathBuf,
        /// Print the Hasse diagram of the algebra in Graphviz dot syntax instead.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum AdCmd {
    /// List the members of a generator below a bound.
    Family {
        /// `triangular` (with `--i`), `evens`, `odds`, `omega` or `N<i>`.
        #[arg(long)]
        name: String,
        #[arg(long)]
        i: Option<u64>,
        #[arg(long, default_value_t = 100)]
        below: u64,
    },
    /// Count the common members of two generators below a bound.
    Check {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 10_000)]
        below: u64,
    },
    /// Choose a new point of each set that avoids all earlier sets.
    Diagonalize {
        /// `triangular` for N0, N1, ..., or a comma-separated list of generators.
        #[arg(long, default_value = "triangular")]
        family: String,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 10_000)]
        below: u64,
    },
    /// Run the generic-filter construction in the almost-disjoint-sets poset.
    Generic {
        /// `dx:<name>` and `eyn:<name>:<n>`.
        #[arg(long, value_delimiter = ',', required = true)]
        dense: Vec<String>,
        #[arg(long, default_value_t = 20_000)]
        fuel: usize,
    },
}
