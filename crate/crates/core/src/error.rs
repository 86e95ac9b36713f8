use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Construction parameters violate a family's existence constraints.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{0} is not a power of a prime")]
    NotPrimePower(u64),

    #[error("subgroup is not normal")]
    NotNormal,

    /// The input is abelian where a nonabelian group is required.
    #[error("group is abelian: {0}")]
    Abelian(String),

    #[error("group is not abelian: {0}")]
    NotAbelian(String),

    /// The requested law does not define a group (or not a p-group).
    #[error("group axiom violated: {0}")]
    Axiom(String),

    #[error("size guard exceeded: {what} = {value} > {limit}")]
    GuardExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),
}
