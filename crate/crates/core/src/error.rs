use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,

    #[error("connector threshold must be at least 1")]
    ZeroThreshold,

    #[error("letter {letter} at position {position} is outside 1..={k}")]
    LetterOutOfRange { position: usize, letter: u64, k: u32 },

    #[error("cannot parse word at position {position}: {reason}")]
    WordParse { position: usize, reason: String },

    #[error("enumeration too large: {k}^{n} words exceeds the cap of {cap}")]
    EnumerationTooLarge { n: usize, k: u32, cap: u64 },

    #[error("rational function is not normalized: denominator constant term is {0}")]
    NotNormalized(String),

    #[error("inexact division in fraction-free elimination")]
    InexactDivision,

    #[error("cannot parse polynomial {input:?}: {reason}")]
    PolyParse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
