use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exact division that must succeed did not. Carries both operands in
    /// canonical text form.
    #[error("exact division failed in {context}: ({numerator}) / ({denominator})")]
    InternalNonDivisible {
        context: String,
        numerator: String,
        denominator: String,
    },
    #[error("{what} = {value} exceeds the limit {limit}")]
    Range {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
}
