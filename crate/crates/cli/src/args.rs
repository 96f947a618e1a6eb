use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact q-Whittaker polynomials, graded characters of Weyl modules for sl_r[t],
/// and verification of the identities relating them.
#[derive(Parser, Debug)]
#[command(name = "weylrec", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// `r` in `sl_r`, also the number of variables.
    #[arg(long, global = true, default_value_t = 2)]
    pub rank: usize,
    /// Highest power of `q` kept in truncated series.
    #[arg(long, global = true, default_value_t = 6)]
    pub order: usize,
    /// Highest total `x`-degree checked.
    #[arg(long, global = true, default_value_t = 6)]
    pub degree: u32,
    /// Cut-off on `|ξ(μ)|` for sums over dominant weights; `auto` is `|λ| + r·order`.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_bound)]
    pub mu_bound: Bound,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Auto,
    Fixed(u32),
}

fn parse_bound(s: &str) -> Result<Bound, String> {
    if s == "auto" {
        return Ok(Bound::Auto);
    }
    s.parse()
        .map(Bound::Fixed)
        .map_err(|_| format!("expected `auto` or a nonnegative integer, got `{s}`"))
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Monomial symmetric functions.
    M,
    /// Laurent Schur functions `|x|^ℓ s_λ`.
    S,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the q-Whittaker polynomial `P_ξ(x; q, 0)`.
    Macdonald {
        #[arg(long, value_parser = parse_list)]
        partition: List,
        #[arg(long, value_enum, default_value_t = Basis::M)]
        basis: Basis,
    },
    /// Print a graded character.
    Character {
        #[command(subcommand)]
        which: CharacterKind,
    },
    /// Print a Hilbert series.
    Hilbert {
        #[arg(value_enum)]
        which: HilbertKind,
        #[arg(long, value_parser = parse_list)]
        weight: List,
    },
    /// Check an identity; exit 0 on pass, 1 on a mismatch, 3 if inconclusive.
    Verify(VerifyArgs),
    /// Multiplicities `[P(λ,0) : W(μ,s)]`.
    ReciprocityTable {
        #[arg(long, value_parser = parse_list)]
        weight: List,
        /// Largest grade `s`; defaults to `--order`.
        #[arg(long)]
        max_grade: Option<u32>,
        /// Keep only `μ` among the first `k` dominant weights of the enumeration.
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Write the exact (or, with `--truncated`, the truncated) q-Whittaker table as JSON.
    Export {
        #[arg(long)]
        max_size: u32,
        /// Export the table with coefficients modulo `q^{order+1}`.
        #[arg(long)]
        truncated: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CharacterKind {
    /// `Σ_k [W_loc(λ,0)[k] : V(μ)]` as `(μ,k): mult` lines.
    LocalWeyl {
        #[arg(long, value_parser = parse_list)]
        weight: List,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertKind {
    Local,
    Global,
    Projective,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Orthonormality,
    CauchyKernels,
    CauchyT0,
    Mult,
    Lim,
    Lhs,
    Crucial,
    Norms,
    Reciprocity,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupingArg {
    PerGrade,
    PerWeight,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub identity: Identity,
    /// Highest weight for `reciprocity` and `crucial`.
    #[arg(long, value_parser = parse_list, conflicts_with = "partition")]
    pub weight: Option<List>,
    /// `λ ∈ Par(r-1)` for `crucial`, as an alternative to `--weight`.
    #[arg(long, value_parser = parse_list)]
    pub partition: Option<List>,
    /// Largest `|ξ|` for `norms`, largest `|λ|` for `mult` and `lim`.
    #[arg(long)]
    pub max_size: Option<u32>,
    /// Largest `m` for `lim`.
    #[arg(long, default_value_t = 3)]
    pub max_m: usize,
    /// Summation order of the right side for `reciprocity`.
    #[arg(long, value_enum, default_value_t = GroupingArg::PerGrade)]
    pub grouping: GroupingArg,
}

/// A comma-separated list of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct List(pub Vec<u32>);

fn parse_list(s: &str) -> Result<List, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{t}` is not a nonnegative integer"))
        })
        .collect::<Result<_, _>>()
        .map(List)
}
