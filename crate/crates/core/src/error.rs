use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A length or index argument exceeds the available data.
    #[error("range error: {requested} exceeds {available}")]
    Range { requested: usize, available: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cannot factorize {word:?}: {reason}")]
    Factorization { word: String, reason: String },

    /// A configured work or memory budget would be exceeded.
    #[error("resource budget exceeded: {0}")]
    Resource(String),

    #[error("unsupported prime {prime}: {reason}")]
    UnsupportedPrime { prime: u64, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    /// A window violated the balance bound.
    #[error("balance violated at window length {window} (start {start}): deviation {deviation} > {bound}")]
    Balance {
        window: usize,
        start: usize,
        deviation: f64,
        bound: f64,
    },
}

impl Error {
    /// Short machine-readable tag used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Range { .. } => "range",
            Error::Precondition(_) => "precondition",
            Error::Factorization { .. } => "factorization",
            Error::Resource(_) => "resource",
            Error::UnsupportedPrime { .. } => "unsupported_prime",
            Error::Parse(_) => "parse",
            Error::Balance { .. } => "balance",
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}
