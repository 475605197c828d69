use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("subsystem label `{0}` appears more than once")]
    LabelCollision(String),
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),
    #[error("partial trace would discard every subsystem")]
    EmptyRemainder,
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("layouts differ: {0}")]
    LayoutMismatch(String),
    #[error("state is not normalized (deviation {deviation:.3e})")]
    NotNormalized { deviation: f64 },
    #[error("operator is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("operator has negative eigenvalue {eigenvalue:.3e}")]
    NotPositive { eigenvalue: f64 },
    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("operator is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("channel is not trace preserving (deviation {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },
    #[error("measurement basis is not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },
    #[error("invalid bipartition: {0}")]
    InvalidCut(String),
    #[error("expected a pure state (purity {purity:.12})")]
    MixedInput { purity: f64 },
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("target accuracy {epsilon} unreachable with the chosen noise")]
    UnreachableEpsilon { epsilon: f64 },
    #[error("channel output deviates from the declared Γ by {deviation:.3e}")]
    InconsistentChannel { deviation: f64 },
    #[error("dimension {required} exceeds the configured cap {allowed}")]
    ResourceCap { required: usize, allowed: usize },
    #[error("field `{field}`: {message}")]
    Parse { field: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
