use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "effshift",
    version,
    about = "Co-languages, language decisions and invariants of effectively closed subshifts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct PropertyArgs {
    /// nonempty | entropy | periods | contains | cylinder | intersect
    #[arg(long, default_value = "nonempty")]
    pub property: String,
    /// Property parameters as one JSON object, e.g. '{"ref":[1,3,6,10]}'.
    #[arg(long, default_value = "{}")]
    pub params: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PeriodMethod {
    Brute,
    Transfer,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the registry, or describe one shift.
    Zoo {
        #[arg(long)]
        shift: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether patterns are in the language of a minimal shift.
    Decide {
        #[arg(long)]
        shift: String,
        #[command(flatten)]
        property: PropertyArgs,
        /// Pattern to decide; repeat for several.
        #[arg(long = "pattern", required = true)]
        patterns: Vec<String>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Include the alternation trace.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate the language of a minimal shift by dovetailed decisions.
    Enumerate {
        #[arg(long)]
        shift: String,
        #[command(flatten)]
        property: PropertyArgs,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Only admit window patterns up to this level.
        #[arg(long)]
        max_level: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Count accepted words of each length.
    Complexity {
        #[arg(long)]
        shift: String,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Entropy interval of a strongly irreducible shift from one word count.
    Entropy {
        #[arg(long)]
        shift: String,
        #[arg(long)]
        n: u64,
        /// Gluing gap of the shift.
        #[arg(long)]
        gluing: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Periodic-point counts Per_1..Per_i.
    Periods {
        #[arg(long)]
        shift: String,
        #[arg(long, default_value_t = 8)]
        i_max: usize,
        #[arg(long, value_enum, default_value_t = PeriodMethod::Brute)]
        method: PeriodMethod,
        #[command(flatten)]
        out: Output,
    },
    /// Most ones per word length, and the slope interval it gives.
    Slope {
        #[arg(long)]
        shift: String,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Bound alpha of X_[alpha, alpha+1/2] from its co-language.
    Window {
        #[arg(long)]
        shift: String,
        /// Units per round.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 10)]
        rounds: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Co-language of one factor from the co-language of a product.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// Only report patterns of at most this span.
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Co-language of X from the co-language of a disjoint union X ∪ Y.
    Union {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Accepted ball patterns whose generator translates are rejected.
    Invariance {
        #[arg(long)]
        shift: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Re-verify the certificates in a decide or enumerate JSON report.
    Replay {
        certificate: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}
