use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty string has no continued fraction")]
    EmptyString,
    #[error("entry {0} is below 2")]
    EntryTooSmall(i64),
    #[error("invalid fraction {0}/{1}: need coprime p > q >= 1")]
    BadFraction(i64, i64),
    #[error("string has no entry >= 3")]
    AllTwos,
    #[error("string {0} is not in the L family")]
    NotInL(String),
    #[error("rank {0} not supported here")]
    BadRank(usize),
    #[error("rank-one form needs an explicit framing convention")]
    RankOneConvention,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("orientation has {got} signs but the closure has {want} components")]
    Orientation { got: usize, want: usize },
    #[error("search bound exceeded: rank {got} > {max}")]
    TooLarge { got: usize, max: usize },
    #[error("chain has no end entry equal to 2")]
    NoEndTwo,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("braid word is empty")]
    EmptyWord,
    #[error("zero polynomial")]
    ZeroPoly,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
