use thiserror::Error;

/// Errors shared by the arithmetic, tableau and measurement layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("qudit dimension must lie in 2..=32768, got {0}")]
    InvalidDimension(i64),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("operands belong to different rings (d={left} and d={right})")]
    RingMismatch { left: i64, right: i64 },
    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{value} is not a unit modulo {modulus}")]
    NotUnit { value: i64, modulus: i64 },
    #[error("value {value} outside 0..{bound}")]
    OutOfRange { value: i64, bound: i64 },
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("illegal stabilizer group: it contains tau^(-2*{phase}) times the identity")]
    IllegalGroup { phase: i64 },
    #[error("the stabilized state is not unique")]
    NonUniqueState,
    #[error("no proper tableau exists for these generators (columns dependent mod 2)")]
    CannotMakeProper,
    #[error("matrix has no symplectic lift modulo 2d")]
    NotLiftable,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("outcome {outcome} lies outside the support {kappa} + {eta}Z_{d}")]
    InvalidOutcome {
        outcome: i64,
        kappa: i64,
        eta: i64,
        d: i64,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("dense simulation needs {0} amplitudes, limit is 4096")]
    TooLarge(u128),
    #[error("enumeration reached {branches} branches, cap is {cap}")]
    BranchCap { branches: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
