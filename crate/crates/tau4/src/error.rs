use thiserror::Error;

/// Errors shared by all modules.  `BoundExceeded` is the only variant that
/// signals "input too large" rather than "input invalid"; the CLI maps it to
/// a distinct exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} = {value} exceeds the enumeration bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("link is not totally proper: lk(L{i}, L{j}) = {lk} is odd (components are 1-based)")]
    NotTotallyProper { i: usize, j: usize, lk: i64 },

    #[error("sublink is not characteristic for the linking matrix")]
    NotCharacteristic,

    #[error("element is not a unit of Z[w]/(w^8+1); negative powers are undefined")]
    NotAUnit,

    #[error("missing invariant data: {0}")]
    MissingData(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("DIMACS parse error at line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True when the error is a size-bound refusal rather than bad input.
    pub fn is_size_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
