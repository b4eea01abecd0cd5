use thiserror::Error;

/// Errors raised by the toolkit. Validation *failures* are not errors; they
/// are reported through [`crate::family::ValidationReport`] and friends.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set size {0} out of range (1..={max})", max = crate::family::MAX_GROUND)]
    GroundSize(usize),

    #[error("element {element} is outside the ground set [1..={n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("member {index} has elements outside the ground set [1..={n}]")]
    GroundMismatch { index: usize, n: usize },

    #[error("malformed constraint: {0}")]
    Constraint(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("operation requires a nonempty family")]
    EmptyFamily,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("bound undefined: {0}")]
    BoundUndefined(String),

    #[error("not a permutation of [1..={n}]: {reason}")]
    NotPermutation { n: usize, reason: String },

    #[error("family is not uniform")]
    NotUniform,

    #[error("design check failed: {0}")]
    DesignFailed(String),

    #[error("residual has duplicate blocks {0} and {1}")]
    DuplicateResidualBlocks(usize, usize),

    #[error("instance too large: {count} candidates exceed the cap of {cap}")]
    InstanceTooLarge { count: u128, cap: u128 },

    #[error("seed family rejected: {0}")]
    BadSeed(String),

    #[error("triple cover hypothesis failed: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
