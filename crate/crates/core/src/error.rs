use thiserror::Error;

/// Everything that can go wrong while building or analysing a bound quiver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("relation `{relation}` is not composable at `{left}` `{right}`")]
    NonComposableRelation {
        relation: String,
        left: String,
        right: String,
    },
    #[error("relation `{0}` has length < 2")]
    RelationTooShort(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("bound quiver is not a string pair: {0}")]
    NotStringPair(String),
    #[error("bound quiver is not an SAG pair: {0}")]
    NotSag(String),
    #[error("bound quiver has a relation-free oriented cycle")]
    InfiniteDimensional,
    #[error("arrow `{0}` is not a left forbidden arrow")]
    NotLeftForbidden(String),
    #[error("not a forbidden cycle: {0}")]
    NotForbiddenCycle(String),
    #[error("random generation exhausted after {0} attempts")]
    GenerationExhausted(usize),
}

impl Error {
    /// Stable single-token tag, printed first by the CLI.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::DuplicateId(_) => "DuplicateId",
            Error::DanglingEndpoint { .. } => "DanglingEndpoint",
            Error::NonComposableRelation { .. } => "NonComposableRelation",
            Error::RelationTooShort(_) => "RelationTooShort",
            Error::UnknownArrow(_) => "UnknownArrow",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::InvalidPath(_) => "InvalidPath",
            Error::InvalidWalk(_) => "InvalidWalk",
            Error::NotStringPair(_) => "NotStringPair",
            Error::NotSag(_) => "NotSAG",
            Error::InfiniteDimensional => "InfiniteDimensional",
            Error::NotLeftForbidden(_) => "NotLeftForbidden",
            Error::NotForbiddenCycle(_) => "NotForbiddenCycle",
            Error::GenerationExhausted(_) => "GenerationExhausted",
        }
    }

    /// Errors that come from malformed input text rather than from the algebra.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::DuplicateId(_)
                | Error::DanglingEndpoint { .. }
                | Error::NonComposableRelation { .. }
                | Error::RelationTooShort(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
