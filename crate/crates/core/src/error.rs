use num_bigint::BigUint;
use thiserror::Error;

/// Failure modes shared across the crate. Parse covers grammar problems in
/// the text forms; everything else is a domain violation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generators have common divisor {gcd}, complement is not finite")]
    NotCofinite { gcd: u64 },

    #[error("set is not closed under addition: {a} + {b} = {} is missing", a + b)]
    NotClosed { a: u64, b: u64 },

    #[error("element set does not describe a monoid: {0}")]
    NotAMonoid(String),

    #[error("semiring has no atoms, operation requires an atomic semiring")]
    NotAtomic,

    #[error("coefficient at atom {index} is {available}, move needs {needed}")]
    InsufficientCoefficient {
        index: usize,
        needed: BigUint,
        available: BigUint,
    },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("lengths are not congruent modulo {modulus}")]
    MixedResidues { modulus: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
