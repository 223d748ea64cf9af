use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A binomial coefficient was requested at an argument pair with no defined value.
    #[error("binomial coefficient ({p} choose {q}) is undefined under the active convention")]
    Domain { p: i64, q: i64 },

    #[error("{what} = {value} is out of range (bound {bound})")]
    Range {
        what: &'static str,
        value: i64,
        bound: i64,
    },

    /// An internal cross-check failed; this indicates a bug, never bad input.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: malformed cache record: {reason}")]
    CacheFormat {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

impl Error {
    pub(crate) fn range(what: &'static str, value: impl TryInto<i64>, bound: impl TryInto<i64>) -> Self {
        Error::Range {
            what,
            value: value.try_into().unwrap_or(i64::MAX),
            bound: bound.try_into().unwrap_or(i64::MAX),
        }
    }
}
