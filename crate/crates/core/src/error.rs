use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must have at least one generator")]
    EmptyAlphabet,
    #[error("generator name {0:?} must be a single lowercase ascii letter")]
    InvalidName(char),
    #[error("duplicate generator name {0:?}")]
    DuplicateName(char),
    #[error("rank {rank} exceeds the {max} available default generator names")]
    RankTooLarge { rank: usize, max: usize },
    #[error("unknown generator {ch:?} at position {pos}")]
    UnknownGenerator { ch: char, pos: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("construction needs a nonabelian free group (rank >= 2), got rank {0}")]
    RankTooSmall(usize),
    #[error("alphabet rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("series degree caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("degree cap must be at least {min}, got {got}")]
    InvalidCap { min: usize, got: usize },
    #[error("not separable from a member: the word lies in the subgroup")]
    NotSeparable,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid scan bounds: {0}")]
    InvalidBounds(String),
    #[error("nilpotency class target must be at least 2, got {0}")]
    ClassTooSmall(usize),
    #[error("witness certification failed at class {n}: discrepancy has weight {weight}")]
    CertificationFailed { n: usize, weight: usize },
    #[error("unsupported target group: {0}")]
    UnsupportedGroup(String),
    #[error("scan needs {required} homomorphisms into {group}, budget is {budget}")]
    BudgetExceeded {
        group: String,
        required: u128,
        budget: u128,
    },
    #[error("invalid group element for {group}: {reason}")]
    InvalidElement { group: String, reason: String },
}
