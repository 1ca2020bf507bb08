use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are grouped the way the CLI maps them onto exit codes: usage
/// problems, exhausted budgets, and internal consistency failures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("element {0} does not lie in the subfield F_q")]
    NotInSubfield(u32),

    #[error("element index {index} out of range for a field of order {order}")]
    ElementOutOfRange { index: u64, order: u64 },

    #[error("matrix is not hermitian")]
    NotHermitian,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0}")]
    Usage(String),

    #[error(
        "members {first} and {second} of the partial spread intersect (rank {rank} < {expected})"
    )]
    SpreadIntersection {
        first: usize,
        second: usize,
        rank: usize,
        expected: usize,
    },

    #[error("enumeration needs {required} items but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
