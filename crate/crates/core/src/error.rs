use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("unknown configuration `{0}` (expected GENERAL or P1..P6)")]
    UnknownConfig(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("class {0} is neither a (-1)- nor a (-2)-class")]
    NotNegativeClass(String),
    #[error("fixed-part reduction exceeded {cap} steps; trace: {trace}")]
    IterationCap { cap: usize, trace: String },
    #[error("singular linear system")]
    Singular,
    #[error("group closure exceeded {0} elements")]
    ClosureCap(usize),
    #[error("cremona base must be a 3-subset of {{1,2,3,4}}, got {0:?}")]
    InvalidBase(Vec<usize>),
    #[error("not a permutation of 1..4: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("branch data: D{0} + D{1} is not divisible by 2")]
    BranchParity(usize, usize),
    #[error("ramification check needs a negative self-intersection, got {0}")]
    NonNegativeSquare(String),
    #[error("class {0} is not effective on this surface")]
    NotEffective(String),
    #[error("{0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
