use thiserror::Error;

/// Everything that can go wrong while building or checking an algebraic object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("q = {point} is not generic for this expression (denominator vanishes)")]
    NonGenericPoint { point: String },
    #[error("bad placement: positions ({first}, {second}) in {total} legs")]
    BadPlacement {
        first: usize,
        second: usize,
        total: usize,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operator is not invertible")]
    NotInvertible,
    #[error("braiding is not skew-invertible")]
    NotSkewInvertible,
    #[error("braiding is not strictly skew-invertible ({0} is singular)")]
    NotStrictlySkewInvertible(&'static str),
    #[error("invalid braiding table: {0}")]
    InvalidTable(String),
    #[error("inconsistent mu: table declares {declared}, series requires {expected}")]
    InconsistentMu { declared: String, expected: String },
    #[error("unsupported base braiding for Baxterization: {0}")]
    UnsupportedBase(String),
    #[error("unsupported construction: {0}")]
    UnsupportedConstruction(String),
    #[error("generator space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("unsupported double: {0}")]
    UnsupportedDouble(String),
    #[error("incompatible double: {0}")]
    IncompatibleDouble(String),
    #[error("component of degree {0} is zero")]
    EmptyComponent(usize),
    #[error("the reconstruction matrix is singular; the braided-Lie operator is not determined")]
    RhatNotDetermined,
    #[error(
        "creation modes leave the working window {window}; a window of {required} is sufficient"
    )]
    WindowOverflow { window: i64, required: i64 },
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
