use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator not invertible modulo {p}")]
    NotInvertibleModP { p: u64 },
    #[error("{0} is not an odd prime below 2^62")]
    InvalidPrime(u64),
    #[error("cannot parse number `{0}`")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("too many variables: {0} (at most {max})", max = crate::poly::MAX_VARS)]
    TooManyVariables(usize),
    #[error("hyperplane {0} has the zero form")]
    ZeroForm(usize),
    #[error("hyperplanes {0} and {1} are proportional")]
    ProportionalForms(usize, usize),
    #[error("invalid multiplicity: {0}")]
    InvalidMultiplicity(String),
    #[error("hyperplane is not in the arrangement")]
    HyperplaneNotFound,
    #[error("not a flat of the arrangement")]
    NotAFlat,
    #[error("arrangement has rank {0}, expected at most 2")]
    RankTooLarge(usize),
    #[error("generators live in free modules of different ranks")]
    MixedAmbientRanks,
    #[error("computation budget exhausted")]
    BudgetExceeded,
    #[error("degree cutoff exceeded: {0}")]
    CutoffExceeded(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
