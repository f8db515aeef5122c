use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("arrangement data failed validation: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("ambient dimension {dim} exceeds the supported maximum {max}")]
    DimensionGuard { dim: usize, max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the columns of P do not generate the ambient space as a cone")]
    NotQuasiprojectiveSetup,

    #[error("class is not in the relative interior of the moving cone")]
    NotAmple,

    #[error("not Fano: {0}")]
    NotFano(String),

    #[error("fan is neither complete nor a single big cone")]
    NotComplete,

    #[error("cone {cone} is neither a leaf cone nor a big cone")]
    MalformedFanCone { cone: String },

    #[error("not Q-Gorenstein: no linear form realises the divisor on cone {cone}")]
    NotQGorensteinOnCone { cone: String },

    #[error("point lies on the affine hull of the cell")]
    DegenerateCell,

    #[error("affine hull is not lattice-measurable (value group generator {0})")]
    NotLatticeMeasurable(String),

    #[error("invalid candidate: {0}")]
    InvalidCandidate(String),

    #[error("internal invariant breached: {0}")]
    InvariantBreach(String),
}

impl Error {
    /// Process exit code under the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotQGorensteinOnCone { .. } | Error::NotFano(_) | Error::NotAmple => 2,
            Error::InvariantBreach(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
