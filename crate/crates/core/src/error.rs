use thiserror::Error;

/// Errors raised by the library.
///
/// Input errors (`NotCoprime`, `OutOfRange`) are caller mistakes that the CLI
/// maps to exit status 2. `Inconsistency` means two independent routes to the
/// same quantity disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p and m must be coprime (gcd({p}, {m}) = {gcd})")]
    NotCoprime { p: i64, m: i64, gcd: i64 },

    #[error("expected 2 <= p < m <= {max}, got p = {p}, m = {m}")]
    OutOfRange { p: i64, m: i64, max: i64 },

    #[error("{value} has no standard form: it is not a gap of <{p},{m}>")]
    NotAGap { p: i64, m: i64, value: i64 },

    #[error("index {index} is outside [1, {upper}]")]
    IndexOutOfRange { index: i64, upper: i64 },

    #[error("the closed-form recursion requires p >= 3 (got p = 2)")]
    PTwo,

    #[error("operation requires {0}")]
    Precondition(&'static str),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
