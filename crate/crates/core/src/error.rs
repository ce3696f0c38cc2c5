use thiserror::Error;

/// Errors raised by index construction, queries, and I/O.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("input length {n} exceeds the validation cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("position {pos} out of range [{lo}..{hi}]")]
    OutOfRange { pos: u64, lo: u64, hi: u64 },

    #[error("rank {k} out of range: symbol {symbol} occurs {count} times")]
    RankOutOfRange { symbol: u64, k: u64, count: u64 },

    #[error("invalid attractor: {0}")]
    InvalidAttractor(String),

    #[error("no occurrence of a level-{level} block crosses an attractor position")]
    PointerNotFound { level: usize },

    #[error("partial sums overflow 64 bits")]
    Overflow,

    #[error("branching factor {tau} outside legal range [2..{max}]")]
    InvalidTau { tau: u64, max: u64 },

    #[error("bitstring has no set bits")]
    EmptySet,

    #[error("expected a binary string, found symbol {0}")]
    NotBinary(u64),

    #[error("no position reaches the target excess")]
    NoMatch,

    #[error("invalid parentheses operation: {0}")]
    InvalidParen(String),

    #[error("malformed grammar: {0}")]
    Grammar(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("index was built without the {0} structure")]
    MissingStructure(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
