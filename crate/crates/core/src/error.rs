use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol index {index} out of range (alphabet has {size} symbols)")]
    SymbolOutOfRange { index: usize, size: usize },
    #[error("state index {index} out of range (automaton has {size} states)")]
    StateOutOfRange { index: usize, size: usize },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("{what} sets overlap")]
    Overlap { what: &'static str },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("instance does not have the expected shape: {0}")]
    Shape(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
