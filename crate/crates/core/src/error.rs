use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input text could not be read at all.
    Syntax,
    /// The input was well formed but lies outside the domain of the operation.
    Domain,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("{0} of a positive rational must be at least 1")]
    ZeroComponent(&'static str),
    #[error("index must be at least 1 (the sequence starts at a_1)")]
    ZeroIndex,
    #[error("gap sequence is empty")]
    EmptyGaps,
    #[error("invalid gap {value} at position {position}: gaps after the first must be at least 1")]
    InvalidGap { position: usize, value: i128 },
    #[error("continued fraction has quotient {value} at position {position}; quotients must be at least 1")]
    InvalidQuotient { position: usize, value: String },
    #[error("continued fraction is not canonical: final quotient is 1")]
    NonCanonical,
    #[error("continued fraction value {0} is not positive")]
    NotPositive(String),
    #[error("gap {0} is too large to place in a binary index")]
    IndexTooLarge(String),
    #[error("quotient stream ended after {available} terms, {needed} convergents requested")]
    StreamExhausted { needed: usize, available: usize },
    #[error("2-adic integer 0 has no image under the index map")]
    ZeroNumeral,
    #[error("stream-backed 2-adic integer has no known rational value")]
    NotRational,
    #[error("numeral has {available} set bits, {requested} requested")]
    TooFewOnes { requested: usize, available: usize },
    #[error("precision must be at least 1 bit")]
    ZeroPrecision,
    #[error("2-adic norm of 0 is not defined here")]
    ZeroNorm,
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Syntax,
            _ => ErrorKind::Domain,
        }
    }
}
