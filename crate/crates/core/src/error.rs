//! Crate-wide error type.
//!
//! Variants are grouped by failure class so the CLI can map them onto its
//! exit-code contract (parse, contract/hash, internal).

use thiserror::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file. `line` is 1-based where known.
    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// Structurally valid input violating a documented invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// A labeled document's source is missing from the source-stance map.
    #[error("unknown source '{source_name}' for document '{doc_id}'")]
    UnknownSource { source_name: String, doc_id: String },

    /// Stratification impossible (class smaller than fold count).
    #[error("stratification error: {0}")]
    Stratification(String),

    /// Text that cannot be annotated (e.g. no alphabetic tokens).
    #[error("annotation error for '{doc_id}': {message}")]
    Annotation { doc_id: String, message: String },

    /// Missing or incomplete lexicon resources.
    #[error("lexicon coverage error: {0}")]
    Coverage(String),

    /// Bad configuration (unknown keys, missing resources, empty selections).
    #[error("configuration error: {0}")]
    Config(String),

    /// Feature extraction failure.
    #[error("extraction error for '{doc_id}': {message}")]
    Extraction { doc_id: String, message: String },

    /// Training cannot proceed (single class, non-finite features).
    #[error("training error: {0}")]
    Training(String),

    /// Optimizer failure (divergence, non-finite objective).
    #[error("optimizer error: {0}")]
    Optimizer(String),

    /// Metric undefined for the given confusion matrix.
    #[error("metric error: {0}")]
    Metric(String),

    /// Caller-supplied data does not match a stored contract
    /// (manifest mismatch, glossary hash skew, format version).
    #[error("contract error: {0}")]
    Contract(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
