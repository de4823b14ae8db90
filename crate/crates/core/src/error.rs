use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("operator is not Hermitian (deviation {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("eigenframe is degenerate at t = {t} ns (Δ = 0 and ε(t) = 0)")]
    DegenerateFrame { t: f64 },

    #[error("frame step too large at t = {t} ns: overlap determinant {det:.3} < 0.5")]
    StepTooLarge { t: f64, det: f64 },

    #[error("density matrix lost positivity at t = {t} ns (min eigenvalue {min_eigenvalue:e})")]
    PositivityViolation { t: f64, min_eigenvalue: f64 },

    #[error("invariant `{invariant}` violated at t = {t} ns (deviation {deviation:e})")]
    InvariantViolation {
        invariant: &'static str,
        t: f64,
        deviation: f64,
    },

    #[error("trajectory ends at {t_end} ns but the averaging window needs {required} ns")]
    TrajectoryTooShort { t_end: f64, required: f64 },

    #[error("argument out of range for {what}")]
    OutOfRange { what: &'static str },

    #[error("shift search inconclusive: minimum on the boundary n = {n} of the search grid")]
    InconclusiveShift { n: i64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}
