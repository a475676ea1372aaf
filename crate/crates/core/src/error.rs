use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a right-angled Coxeter presentation: relator {index} ({relator}) is neither a square nor a commutation")]
    NotRacg { index: usize, relator: String },

    #[error("not a right-angled Coxeter presentation: generator {0} has no square relator")]
    MissingSquare(String),

    #[error("parity quotient is ill-defined: relator {relator} has odd exponent sum in generator {generator}")]
    QuotientIllDefined { relator: usize, generator: usize },

    #[error("coset table index {index} exceeds the limit {limit}")]
    IndexTooLarge { index: u128, limit: usize },

    #[error("word {0} does not lie in the subgroup")]
    NotInSubgroup(String),

    #[error("generator {gen} cannot be eliminated with relator {relator}: it occurs {occurrences} times")]
    NotEliminable {
        gen: usize,
        relator: usize,
        occurrences: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
