use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Free group experiments: membership, isolation, nilpotent witnesses and p-group separability.
#[derive(Parser, Debug, Clone)]
#[command(name = "freesep", version)]
pub struct Cli {
    /// Maximum worker threads for the scans (defaults to all cores).
    #[arg(long, global = true, env = "FREESEP_THREADS")]
    pub threads: Option<usize>,

    /// Write the JSON report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Suppress the human-readable summary on standard error.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Decide whether a word lies in a finitely generated subgroup.
    Member(MemberArgs),
    /// Search for roots f ∉ H with f^m ∈ H among all short reduced words.
    Isolated(IsolatedArgs),
    /// Certify that x lies in H·γ_n F for every class 2 ≤ n ≤ N.
    Witness(WitnessArgs),
    /// Count homomorphisms to small p-groups that separate a word from a subgroup.
    Psep(PsepArgs),
    /// Build a finite permutation representation separating a non-member from a subgroup.
    Separate(SeparateArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SubgroupArgs {
    /// Rank of the free group; generators are named x, y, z, w, …
    #[arg(long, default_value_t = 2)]
    pub rank: usize,

    /// Comma-separated subgroup generators; uppercase letters are inverses.
    #[arg(long, value_delimiter = ',', default_value = "xYXyx,y", allow_hyphen_values = true)]
    pub gens: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct MemberArgs {
    #[command(flatten)]
    pub subgroup: SubgroupArgs,

    /// Word to test; the empty string is the identity.
    #[arg(long)]
    pub word: String,
}

#[derive(Args, Debug, Clone)]
pub struct IsolatedArgs {
    #[command(flatten)]
    pub subgroup: SubgroupArgs,

    /// Longest candidate root to enumerate.
    #[arg(long, default_value_t = 8)]
    pub max_len: usize,

    /// Exponents to try (each at least 2).
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
    pub exponents: Vec<u32>,

    /// Check p′-isolation instead: only the prime exponents q ≠ P among --exponents.
    #[arg(long, value_name = "P")]
    pub pprime: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct WitnessArgs {
    /// Largest nilpotency class target.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct PsepArgs {
    #[command(flatten)]
    pub subgroup: SubgroupArgs,

    /// Word to separate from the subgroup.
    #[arg(long, default_value = "x")]
    pub exclude: String,

    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    pub p: Vec<u64>,

    /// Target families per prime: `ut3`, `ut4`, `heis`, `c<k>` or `c<k1>-<k2>` for ℤ/p^k.
    #[arg(long, value_delimiter = ',', default_value = "ut3,c1-3")]
    pub targets: Vec<String>,

    /// Maximum number of homomorphisms per target.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone)]
pub struct SeparateArgs {
    #[command(flatten)]
    pub subgroup: SubgroupArgs,

    /// Non-member word to separate.
    #[arg(long)]
    pub word: String,
}
