use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("value {0} occurs {1} times, expected exactly 2")]
    BadMultiplicity(usize, usize),
    #[error("invalid matching text: {0}")]
    Parse(String),
    #[error("edges do not partition [2n]: {0}")]
    BadEdgeSet(String),
    #[error("unknown edge label {0}")]
    UnknownEdgeLabel(usize),
    #[error("series precondition violated: {0}")]
    SeriesPrecondition(&'static str),
    #[error("not a permutation: {0}")]
    BadPermutation(String),
    #[error("matching contains the unlabeled pattern [123132]; psi is undefined")]
    PsiDomain,
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("missing table entry at index {0}")]
    MissingEntry(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
