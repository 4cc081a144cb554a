use alloc::string::String;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("element is not a square")]
    NotASquare,
    #[error("zero has no square class")]
    ZeroElement,
    #[error("bilinear form is alternating")]
    AlternatingForm,
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is isotropic")]
    IsotropicVector,
    #[error("map is not an involution")]
    NotInvolution,
    #[error("map is not an isometry")]
    NotIsometry,
    #[error("operation requires a different dimension")]
    WrongDimension,
    #[error("dimension exceeds the supported budget")]
    DimensionBudgetExceeded,
    #[error("algebra is not known to be split")]
    NotSplit,
    #[error("isometry is not an interchange")]
    NotInterchange,
    #[error("involution is symplectic")]
    SymplecticInvolution,
    #[error("no invertible alternating element found")]
    NoInvertibleAlternating,
    #[error("quaternion parameter must be nonzero")]
    ZeroParameter,
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("algebra is not simple: {0}")]
    NotSimple(String),
    #[error("tensor product could not be certified split")]
    NotSplitCertified,
    #[error("inputs are defined over different fields")]
    MixedFields,
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
}

pub type Result<T> = core::result::Result<T, Error>;
