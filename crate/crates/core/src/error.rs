use num_bigint::BigUint;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured resource limit (bit size, sieve memory, enumeration box,
    /// divisor count) would be exceeded. Never silently truncates.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Trial division up to `budget` left a composite cofactor unresolved.
    #[error("factorization incomplete: cofactor {cofactor} has no prime factor <= {budget}")]
    FactorizationIncomplete { cofactor: BigUint, budget: u64 },

    /// No obstruction prime exists below the search limit.
    #[error("no obstruction prime found up to {limit}")]
    CertificateNotFound { limit: u64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
