use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet invalid: {0}")]
    InvalidAlphabet(String),

    #[error("symbol index {index} out of range for alphabet of size {size}")]
    SymbolOutOfRange { index: usize, size: usize },

    #[error("character {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("sequence of length {len} is too short for order {order} (need at least {needed})")]
    SequenceTooShort { len: usize, order: usize, needed: usize },

    #[error("invalid model order {0}: orders start at 1")]
    InvalidOrder(usize),

    #[error("table for order {order} over {alphabet_size} symbols needs {entries} entries, cap is {cap}")]
    TableTooLarge {
        alphabet_size: usize,
        order: usize,
        entries: u128,
        cap: usize,
    },

    #[error("{what} must satisfy {constraint}, got {value}")]
    Domain {
        what: &'static str,
        constraint: &'static str,
        value: f64,
    },

    #[error(
        "table shapes differ: order {left_order}/|A|={left_size} vs order {right_order}/|A|={right_size}"
    )]
    ShapeMismatch {
        left_order: usize,
        left_size: usize,
        right_order: usize,
        right_size: usize,
    },

    #[error("word code {code} out of range for order {order}")]
    WordOutOfRange { code: usize, order: usize },

    #[error("no model orders to compare")]
    EmptyOrders,

    #[error("hidden Markov model invalid: {0}")]
    InvalidHmm(String),

    #[error("transition matrix is reducible: state {from} cannot reach state {to}")]
    Reducible { from: usize, to: usize },

    #[error("process is not unifilar: state {state} on symbol {symbol} has {successors} successors; closed-form entropy rate needs a deterministic presentation{hint}")]
    NonUnifilar {
        state: usize,
        symbol: usize,
        successors: usize,
        hint: String,
    },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(what: &'static str, constraint: &'static str, value: f64) -> Self {
        Error::Domain {
            what,
            constraint,
            value,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of numeric evaluation (as opposed to bad input or configuration).
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Domain { .. } | Error::Numeric(_))
    }

    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidAlphabet(_) | Error::SymbolOutOfRange { .. } | Error::UnknownSymbol(_) => "input",
            Error::SequenceTooShort { .. } => "input",
            Error::InvalidOrder(_) | Error::TableTooLarge { .. } | Error::EmptyOrders => "order",
            Error::Domain { .. } => "domain",
            Error::ShapeMismatch { .. } | Error::WordOutOfRange { .. } => "shape",
            Error::InvalidHmm(_) | Error::Reducible { .. } | Error::NonUnifilar { .. } => "process",
            Error::Numeric(_) => "numeric",
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
