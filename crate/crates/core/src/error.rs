//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Series division requires a denominator with nonzero constant term.
    #[error("division by a series with zero constant term")]
    ZeroConstantTerm,

    /// An infinite Pochhammer product with shift 0 repeats the factor (1-c) forever.
    #[error("divergent infinite product: factor in q^0 repeats")]
    DivergentProduct,

    /// Argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Enumeration- or closed-form-backed series builders cap the truncation order.
    #[error("order {requested} exceeds the supported maximum {max}")]
    OrderTooLarge { requested: usize, max: usize },

    /// Partition division requires the divisor's parts to be contained with multiplicity.
    #[error("not a subpartition")]
    NotASubpartition,

    /// An arithmetic weight function vanishes where the formula divides by it.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// Sieve construction memory guard.
    #[error("sieve limit {requested} exceeds the supported maximum {max}")]
    LimitTooLarge { requested: usize, max: usize },

    /// Alladi-style sums target 1/phi(t) and need gcd(r, t) = 1.
    #[error("residue {r} is not coprime to modulus {t}")]
    BadResidue { r: u32, t: u32 },

    /// Zeta-style sums outside their convergence range.
    #[error("divergent parameter: {0}")]
    DivergentParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
