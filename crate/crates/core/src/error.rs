use thiserror::Error;

/// Errors produced by every layer of the toolkit.
///
/// `HypothesisViolated` and `Invariant` are kept apart from input errors so
/// callers (notably the CLI) can map them onto distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch")]
    RingMismatch,
    #[error("not a unit")]
    NotAUnit,
    #[error("not enumerable: {0} is infinite")]
    NotEnumerable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-monic divisor: {0}")]
    NonMonicDivisor(String),
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("polynomial is not reduced with respect to the grid: {0}")]
    NotReduced(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("field required, got {0}")]
    FieldRequired(String),
    #[error("no counterexample exists: the grid satisfies condition (D)")]
    NoCounterexample,
    #[error("polynomial does not vanish on the grid: f{point} = {value}")]
    NotVanishing { point: String, value: String },
    #[error("missing value for point {0}")]
    MissingPoint(String),
    #[error("enumeration cap exceeded for {what}: requires {required}, cap is {cap}")]
    CapExceeded {
        what: String,
        required: u128,
        cap: u128,
    },
    #[error("empty set")]
    EmptySet,
    #[error("parse error at position {position}: {message}")]
    Parse { message: String, position: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
