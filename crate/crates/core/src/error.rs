use thiserror::Error;

/// Errors raised by shape construction, ring operations and formula evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QkError {
    #[error("invalid context Gr({m},{n}): need 1 <= m < n")]
    InvalidContext { m: usize, n: usize },

    #[error("length mismatch: expected {expected} parts, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("monotonicity violated: part {index} ({left}) < part {next} ({right})", next = index + 1)]
    NotMonotone { index: usize, left: i64, right: i64 },

    #[error("wrap constraint violated: last part + n - m = {wrapped} < first part {first}")]
    WrapViolation { wrapped: i64, first: i64 },

    #[error("shapes live in different contexts")]
    ContextMismatch,

    #[error("skew shape undefined: inner shape is not contained in outer shape")]
    NotContained,

    #[error("{what} = {value} out of range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("hook ({a}\\{b}) does not fit the {m}x{k} rectangle")]
    HookDoesNotFit { a: i64, b: i64, m: usize, k: usize },

    #[error("negative hook parameters ({a}\\{b}) denote the zero class")]
    NegativeHook { a: i64, b: i64 },

    #[error("shape is not classical")]
    NotClassical,

    #[error("partition {0} does not fit the rectangle")]
    DoesNotFit(String),

    #[error("partition entries must be weakly decreasing and nonnegative")]
    InvalidPartition,

    #[error("{0}")]
    Domain(String),

    #[error("no repeated row or column can be removed")]
    NoRemovableRepeat,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, QkError>;
