use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported group type: {0}")]
    UnsupportedType(String),
    #[error("no exact coordinate field for {0}; rerun in float mode")]
    InexactField(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basepoint is not generic: it is orthogonal to the root {root}")]
    NonGeneric { root: String },
    #[error("basepoint is not in the fundamental chamber: it pairs non-positively with simple root {index}")]
    OutsideChamber { index: usize },
    #[error("basepoint is not balanced: its pairings with the simple roots differ")]
    Unbalanced,
    #[error("group enumeration exceeded the bound of {0} elements")]
    BoundExceeded(usize),
    #[error("singular linear system")]
    Singular,
    #[error("empty point list")]
    Empty,
    #[error("polytope is not simple at vertex {0}")]
    NotSimple(usize),
    #[error("element {0} is not c-sortable")]
    NotSortable(String),
    #[error("{0} is not crystallographic")]
    NotCrystallographic(String),
    #[error("basepoint {0} does not have integer coordinates in the simple-root basis")]
    NonIntegral(String),
    #[error("not a Coxeter element word: {0}")]
    InvalidCoxeterElement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
