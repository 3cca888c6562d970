use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A series operation needed a specific constant term.
    #[error("series constant term must be {expected}, found {found}")]
    ConstantTerm {
        expected: &'static str,
        found: String,
    },

    /// An exact division that is a theorem turned out not to be exact.
    #[error("internal consistency: {context} is not an integer")]
    NonIntegral { context: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series diverges: {0}")]
    Divergent(String),

    #[error("no convergence after {terms} terms: {context}")]
    Convergence { terms: usize, context: String },

    #[error("operator word of length {len} exceeds the cap of {cap} letters")]
    WordCap { len: usize, cap: usize },

    #[error("expansion into {terms} words exceeds the cap of {cap}")]
    TermCap { terms: u128, cap: usize },

    #[error("lex error at byte {offset}: unexpected {found:?}")]
    Lex { offset: usize, found: char },

    #[error("parse error at byte {offset}: expected {expected}, found {found}")]
    Parse {
        offset: usize,
        expected: String,
        found: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by hitting a size or iteration budget.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::WordCap { .. }
                | Error::TermCap { .. }
                | Error::Convergence { .. }
                | Error::Divergent(_)
        )
    }

    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Lex { .. } | Error::Parse { .. })
    }
}
