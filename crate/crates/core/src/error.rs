use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("type mismatch{}: expected {expected}, found {found}", at_offset(.offset))]
    TypeMismatch {
        expected: String,
        found: String,
        offset: Option<usize>,
    },
    #[error("arity overflow{}: `{head}` of type {ty} applied to {given} arguments", at_offset(.offset))]
    ArityOverflow {
        head: String,
        ty: String,
        given: usize,
        offset: Option<usize>,
    },
    #[error("invalid position {0}")]
    InvalidPosition(String),
    #[error("not a higher-order pattern: {0}")]
    NotAPattern(String),
    #[error("shape violation: {0}")]
    Shape(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("not pattern-derived: {0}")]
    NotPatternDerived(String),
    #[error("refutation does not apply: {0}")]
    NotRefutable(String),
    #[error("fuel exhausted: {0}")]
    FuelExhausted(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("json: {0}")]
    Json(String),
}

fn at_offset(offset: &Option<usize>) -> String {
    offset
        .map(|o| format!(" at offset {o}"))
        .unwrap_or_default()
}

impl Error {
    pub(crate) fn mismatch(expected: impl ToString, found: impl ToString) -> Error {
        Error::TypeMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
            offset: None,
        }
    }
}
