use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown lattice name `{0}`")]
    UnknownLattice(String),

    #[error("invalid lattice parameter: {0}")]
    InvalidParameter(String),

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("gram matrix is degenerate (determinant 0)")]
    Degenerate,

    #[error("lattice is indefinite")]
    Indefinite,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector is not allowed here")]
    ZeroVector,

    #[error("shift is not in the dual lattice")]
    ShiftNotInDual,

    #[error("norm {norm} has the wrong sign for a {definiteness} definite lattice")]
    NormSign { norm: String, definiteness: &'static str },

    #[error("vector is not in E8: {0}")]
    NotInE8(String),

    #[error("wrong norm: {got}, expected {expected}")]
    WrongNorm { got: String, expected: i64 },

    #[error("vector is not primitive")]
    NotPrimitive,

    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(i64),

    #[error("series division needs a unit leading coefficient, got {0}")]
    NonUnitLeading(String),

    #[error("requested precision {requested} exceeds available precision {available}")]
    Precision { requested: usize, available: usize },

    #[error("enumeration budget exceeded ({0} nodes)")]
    BudgetExceeded(u64),

    #[error("brute-force box of {0} points exceeds the cap")]
    BoxTooLarge(u128),

    #[error("discriminant group of order {0} is too large to tabulate")]
    DiscriminantTooLarge(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit status used by the CLI and the C ABI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) | Error::BoxTooLarge(_) => 3,
            Error::Consistency(_) | Error::Overflow(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(e.to_string())
    }
}
