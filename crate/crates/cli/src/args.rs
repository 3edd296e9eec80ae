use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracperm::families::VerifyMode;
use fracperm::search::SignChoice;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "fracperm", version, about = "Permutation trinomials over F_{q^2}")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "FRACPERM_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify families, fractional conjectures or published criteria.
    Verify(VerifyArgs),
    /// Sweep x^r (1 + s1 x^{m(q-1)} + s2 x^{n(q-1)}) for permutations.
    Search(SearchArgs),
    /// Partition family instances into multiplicative-equivalence classes.
    Classify(ClassifyArgs),
    /// Emit the comparison table of x^a + x^b + x^c trinomials as CSV.
    Table(TableArgs),
    /// Root counting over F_{2^k}.
    Solve(SolveArgs),
}

/// An inclusive range written `a..b`, `a..=b` or `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span<T>(pub RangeInclusive<T>);

impl<T: FromStr + PartialOrd + Copy> FromStr for Span<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<T>().map_err(|_| format!("bad bound `{t}`"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        Ok(Span(a..=b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Lemma1,
    Full,
    Both,
}

impl From<Mode> for VerifyMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Lemma1 => VerifyMode::Lemma1,
            Mode::Full => VerifyMode::Full,
            Mode::Both => VerifyMode::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Hou,
    LeePark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Signs {
    Plus,
    All,
}

impl From<Signs> for SignChoice {
    fn from(s: Signs) -> Self {
        match s {
            Signs::Plus => SignChoice::Plus,
            Signs::All => SignChoice::All,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated family or fractional-conjecture ids.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["criterion", "crosscheck"])]
    pub family: Vec<String>,
    /// Compare a published criterion with brute force instead.
    #[arg(long, value_enum, conflicts_with = "crosscheck")]
    pub criterion: Option<Criterion>,
    /// Randomized comparison of the Lemma 1 reduction with brute force.
    #[arg(long)]
    pub crosscheck: bool,
    /// k range (default 1..6; 1..2 for hou; 1..3 for lee-park; 1..8 for crosscheck).
    #[arg(long)]
    pub k: Option<Span<u32>>,
    /// l range.
    #[arg(long, default_value = "0..10")]
    pub l: Span<u64>,
    #[arg(long, value_enum, default_value_t = Mode::Lemma1)]
    pub mode: Mode,
    /// Include instances whose conditions fail.
    #[arg(long)]
    pub negative: bool,
    /// Samples per field for randomized sweeps.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = Signs::Plus)]
    pub signs: Signs,
    /// r range (default 1..q+1).
    #[arg(long)]
    pub r: Option<Span<u64>>,
    /// Cross-check every candidate by full-field enumeration.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 4)]
    pub k: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u64,
    /// Comma-separated family ids (default: the seven characteristic-2
    /// families of the comparison table).
    #[arg(long, value_delimiter = ',')]
    pub family: Vec<String>,
    /// Comma-separated display-fraction labels to compare on mu_{q+1}
    /// (default: all labels of characteristic p).
    #[arg(long, value_delimiter = ',')]
    pub fractions: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(subcommand)]
    pub equation: Equation,
}

/// Coefficients are dense element indices in F_{2^{2k}} and must lie in
/// the subfield F_{2^k}.
#[derive(Debug, Subcommand)]
pub enum Equation {
    /// x^2 + u x + v = 0 over F_{2^k}.
    Quadratic {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        u: u32,
        #[arg(long)]
        v: u32,
    },
    /// Whether x^3 + a x + b = 0 (b != 0) has a unique root in F_{2^k}.
    Cubic {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Compare both criteria with exhaustive root counts for every
    /// coefficient tuple.
    Exhaustive {
        #[arg(long, default_value = "1..6")]
        k: Span<u32>,
    },
}
