use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unimodularity violated at minor ({0})")]
    NotUnimodular(String),

    #[error("iota has rank less than k = {0}")]
    RankDeficient(usize),

    #[error("not a GT element: {0}")]
    NotGtElement(String),

    #[error("elements live over different torus data")]
    DatumMismatch,

    #[error("subset {0} is not exceptional")]
    NotExceptional(String),

    #[error("weight {0} lies outside the support")]
    OutsideSupport(String),

    #[error("support is unbounded for the chosen character: {0}")]
    Unbounded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parameters exceed desk-scale bounds: {0}")]
    TooLarge(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Process exit status used by the command line front end: `1` for bad
    /// input, `2` for requests outside the mathematical domain of an
    /// operation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unbounded(_)
            | Error::Precondition(_)
            | Error::OutsideSupport(_)
            | Error::NotExceptional(_)
            | Error::TooLarge(_) => 2,
            _ => 1,
        }
    }
}
