use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{n}: {reason}")]
    NotAPermutation { n: usize, reason: String },

    #[error("a permutation must have at least one entry")]
    EmptyPermutation,

    #[error("order {n} exceeds the supported maximum {max}")]
    OrderTooLarge { n: usize, max: usize },

    #[error("order {n} is below the minimum {min} for this operation")]
    OrderTooSmall { n: usize, min: usize },

    #[error("{0:?} is not the derivative of any permutation")]
    NotRealizable(Vec<i64>),

    #[error("shift {s} is out of range for order {n} (expected 0..={max})", max = n - 1)]
    ShiftOutOfRange { n: usize, s: usize },

    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    #[error("tree weights are inconsistent with any permutation")]
    Inconsistent,

    #[error("sequence contains repeated values")]
    DuplicateValues,

    #[error("sequence must be nonempty")]
    EmptySequence,

    #[error("row {k} out of range for a triangle of base length {m}")]
    RowOutOfRange { k: usize, m: usize },

    #[error("difference order {k} out of range for order {n}")]
    DifferenceOrderOutOfRange { k: usize, n: usize },

    #[error("operation requires an even order, got {0}")]
    OddOrder(usize),

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: i64, b: i64 },

    #[error("expected 1 <= a < b, got a = {a}, b = {b}")]
    NotStrictlyOrdered { a: i64, b: i64 },

    #[error("a D-pair needs two distinct values, got {0} twice")]
    DegeneratePair(i64),

    #[error("absolute values {0:?} do not form a permutation")]
    InvalidSignedPermutation(Vec<i64>),

    #[error("invalid builder state: {0}")]
    InvalidBuilderState(String),

    #[error("column {col} cannot extend the current 1-Costas prefix")]
    ColumnNotPermitted { col: usize },

    #[error("invalid column fill: {0}")]
    InvalidColumnFill(String),

    #[error("column fill is not k-convex")]
    StateNotKConvex,

    #[error("row {row} is out of range 1..={n}")]
    RowIndexOutOfRange { row: usize, n: usize },

    #[error("chooser picked row {row}, which is not among the candidates {candidates:?}")]
    InvalidChoice { row: usize, candidates: Vec<usize> },

    #[error("parse error: {0}")]
    Parse(String),
}
