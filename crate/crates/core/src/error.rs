use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a universe must contain at least one element")]
    EmptyUniverse,
    #[error("duplicate label `{0}` in universe")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("element index {index} out of range for a universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("{operation}: operands live on different universes")]
    UniverseMismatch { operation: &'static str },
    #[error("mapping needs {expected} targets, got {actual}")]
    MappingArity { expected: usize, actual: usize },
    #[error("no image assigned to `{0}`")]
    UnassignedElement(String),
    #[error("`{0}` is assigned more than one image")]
    ConflictingAssignment(String),
    #[error("size {size} outside the supported range 1..={max}")]
    SizeOutOfRange { size: usize, max: usize },
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("budget refused: {cases} cases exceed the cap of {cap}")]
    BudgetExceeded { cases: u128, cap: u64 },
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("instance does not fit law {law}: {reason}")]
    InstanceShape { law: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
