use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bit string has {got} characters, expected {expected}")]
    BitstringLength { expected: usize, got: usize },

    #[error("invalid bit string character {found:?} (only '0' and '1' are allowed)")]
    BitstringChar { found: char },

    #[error("{what} supports at most {limit} qubits, got {got}")]
    Capacity {
        what: &'static str,
        limit: u32,
        got: u32,
    },

    #[error("dimension mismatch: state has {state} classes, operator has {operator}")]
    DimensionMismatch { state: usize, operator: usize },

    #[error("target cost equals the spectrum mean; the phase-scale rule is undefined there")]
    TargetAtMean,

    #[error("cost {0} is not a value of the spectrum")]
    UnknownCost(String),

    #[error("no interior probability peak within {k_max} iterations")]
    NoPeak { k_max: usize },

    #[error("degenerate iteration dynamics: eigenvector normalization vanishes")]
    DegenerateDynamics,

    #[error("peak-probability formula is singular at phi={phi}, theta={theta}")]
    SingularPeak { phi: f64, theta: f64 },

    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Capacity errors map to a distinct process exit status in the CLI.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
