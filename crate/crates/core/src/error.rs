use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{len}: {values:?}")]
    InvalidPermutation { values: Vec<usize>, len: usize },

    #[error("cannot parse permutation from {0:?}")]
    ParsePermutation(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("pattern set must contain 2 or 3 distinct length-3 patterns, got {0}")]
    PatternSetSize(usize),

    #[error("n = {n} exceeds the oracle ceiling of {ceiling}")]
    OracleCeiling { n: usize, ceiling: usize },

    #[error("{occurrence} is not an occurrence of {pattern} in {host}")]
    NotAnOccurrence {
        occurrence: String,
        pattern: String,
        host: String,
    },

    #[error("word {0} has two consecutive ones")]
    ConsecutiveOnes(String),

    #[error("permutation {perm} is outside the domain of {map}")]
    OutsideDomain { perm: String, map: &'static str },

    #[error("no structural swap from {from} to {to} on class {class}")]
    UnsupportedSwap {
        class: String,
        from: String,
        to: String,
    },

    #[error("denominator has zero constant term")]
    ZeroConstantTerm,

    #[error("denominator constant term {0} is not a unit")]
    NonUnitConstantTerm(String),

    #[error("formula value {value} at n = {n} is not an integer")]
    NonIntegral { value: String, n: usize },

    #[error("malformed polynomial {input:?}: {reason}")]
    PolynomialParse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
