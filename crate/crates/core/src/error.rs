use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps each variant onto a process exit code (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown group kind {0:?}")]
    UnknownKind(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generator index {index} out of range for {count} generators")]
    InvalidIndex { index: usize, count: usize },
    #[error("elements belong to different realizations")]
    MixedRealizations,
    #[error("memory cap of {cap} elements exceeded at radius {radius}")]
    CapExceeded { cap: usize, radius: usize },
    #[error("combinatorial cap of {cap} exceeded: {what}")]
    CombinatorialCap { cap: usize, what: String },
    #[error("element budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("empty set")]
    EmptySet,
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("window {window} exceeded by shift index {index}")]
    WindowExceeded { window: i64, index: i64 },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownKind(_)
            | Error::InvalidParameters(_)
            | Error::InvalidIndex { .. } => 2,
            Error::CapExceeded { .. } | Error::CombinatorialCap { .. } | Error::BudgetExceeded { .. } => 4,
            Error::Mismatch(_) | Error::Precondition(_) | Error::EmptySet => 2,
            Error::WindowExceeded { .. } => 3,
            Error::MixedRealizations | Error::Io(_) => 5,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
