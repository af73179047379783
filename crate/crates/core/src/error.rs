use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invalid Seifert invariants: {}", .0.join("; "))]
    InvalidInvariants(Vec<String>),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),

    #[error("bit for `{generator}` must be 0 or 1, got `{value}`")]
    InvalidBit { generator: String, value: String },

    #[error("homomorphism does not match the presentation's generators")]
    HomomorphismShape,

    #[error("not an epimorphism onto Z/2: {0}")]
    NotEpimorphism(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("{what} exceeds the supported bound ({value} > {limit})")]
    TooLarge {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("unknown substitution case `{0}`")]
    UnknownCase(String),
}
