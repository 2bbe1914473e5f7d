use thiserror::Error;

/// Errors raised by the construction and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular value iteration did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("singular value {value} lies outside [0, 1] by more than the clamp tolerance")]
    ClampViolation { value: f64 },
    #[error("input vectors are linearly dependent (rank deficiency at vector {index})")]
    RankDeficient { index: usize },
    #[error("vector {index} has irrational norm; exact normalization impossible")]
    IrrationalNorm { index: usize },
    #[error("point {index} is not a unit vector (|x|^2 = {norm2})")]
    NonUnitPoint { index: usize, norm2: String },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("degenerate normalization: {0}")]
    Degenerate(String),
    #[error("enumeration of {requested} elements exceeds cap {cap}")]
    CapExceeded { requested: String, cap: usize },
    #[error("frame is not a tight {t}-fusion frame")]
    FrameCheckFailed { t: u32 },
    #[error("per-plane design total weights differ")]
    WeightMismatch,
    #[error("input is not invariant under signed permutations")]
    NotInvariant,
    #[error("disjointness repair exhausted {rounds} rounds")]
    RepairExhausted { rounds: usize },
    #[error("SIC overlap condition violated for pair ({i}, {j}): {overlap}")]
    SicViolation { i: usize, j: usize, overlap: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
