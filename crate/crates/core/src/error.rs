use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("root permutation of `{name}` is not a bijection of 0..{degree}")]
    NonBijective { name: String, degree: usize },

    #[error("invalid degree {0}: expected 2 <= d <= 36")]
    InvalidDegree(usize),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("point does not lie in cylinder {0}")]
    NotInCylinder(String),

    #[error("level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },

    /// A hard resource bound was hit before a result could be produced.
    #[error("{what}: cap of {cap} exceeded{}", partial.as_ref().map(|p| format!(" (partial: {p})")).unwrap_or_default())]
    Cap {
        what: String,
        cap: u64,
        partial: Option<String>,
    },

    /// A decision procedure ran out of budget. Never conflated with true/false.
    #[error("undecided at cap: {what} (cap {cap})")]
    Undecided { what: String, cap: u64 },

    #[error("action not minimal on tree boundary: level {level} image is intransitive")]
    NotMinimal { level: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn cap(what: impl Into<String>, cap: u64) -> Self {
        Error::Cap {
            what: what.into(),
            cap,
            partial: None,
        }
    }

    pub fn undecided(what: impl Into<String>, cap: u64) -> Self {
        Error::Undecided {
            what: what.into(),
            cap,
        }
    }

    /// True for errors caused by a resource bound rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Cap { .. } | Error::Undecided { .. })
    }
}
