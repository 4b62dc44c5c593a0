use crate::ring::RingSpec;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("index out of range: ({i},{j}) for degree {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("infinite ring: {0}")]
    InfiniteRing(RingSpec),
    #[error("enumeration budget exceeded: {required} > {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("prime {prime} outside the configured prime set")]
    UnsupportedPrime { prime: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid graded congruence vector: {0}")]
    InvalidCongruence(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported subgroup for this operation: {0}")]
    UnsupportedSubgroup(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
