use std::path::PathBuf;

use crate::congruence::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("duplicate symbol {0}")]
    DuplicateSymbol(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown symbol {0}")]
    UnknownSymbol(String),

    #[error("arity mismatch: {symbol} takes {expected} argument(s), got {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("variable mismatch: {0}")]
    VariableMismatch(String),

    #[error("{what} exceeds cap: {requested} > {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("not a congruence: {0}")]
    Incompatible(Violation),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("missing embedding: {0}")]
    MissingEmbedding(String),

    #[error("the coordinate algebra of the empty set is not defined")]
    EmptyAlgebraicSet,

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("self-check failed: {0}")]
    SelfCheck(String),

    #[error("missing input: {0}")]
    MissingInput(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON in {path}: {message}")]
    Json { path: String, message: String },
}

impl Error {
    /// Stable machine-readable code used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateSymbol(_) => "duplicate_symbol",
            Error::InvalidSignature(_) => "invalid_signature",
            Error::Syntax { .. } => "syntax_error",
            Error::UnknownSymbol(_) => "unknown_symbol",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::SignatureMismatch(_) => "signature_mismatch",
            Error::VariableMismatch(_) => "variable_mismatch",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::InvalidAlgebra(_) => "invalid_algebra",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::Incompatible(_) => "not_a_congruence",
            Error::InvalidEmbedding(_) => "invalid_embedding",
            Error::MissingEmbedding(_) => "missing_embedding",
            Error::EmptyAlgebraicSet => "empty_algebraic_set",
            Error::InvalidChain(_) => "invalid_chain",
            Error::SelfCheck(_) => "self_check_failed",
            Error::MissingInput(_) => "missing_input",
            Error::Io { source, .. } if source.kind() == std::io::ErrorKind::NotFound => {
                "missing_file"
            }
            Error::Io { .. } => "io_error",
            Error::Json { .. } => "malformed_json",
        }
    }

    pub(crate) fn cap(what: &'static str, requested: u64, cap: u64) -> Error {
        Error::CapExceeded {
            what,
            requested,
            cap,
        }
    }
}
