use coreps::CorepError;
use numlin::LinalgError;
use qg_core::QgError;
use thiserror::Error;

/// Failures of the action workbench.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ActionError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("not an action: {what} (residual {residual:.3e})")]
    NotAnAction { what: String, residual: f64 },
    #[error("no faithful invariant state (best minimum eigenvalue {min_eigenvalue:.3e})")]
    NoInvariantState { min_eigenvalue: f64 },
    #[error("state is not invariant (residual {residual:.3e})")]
    NotInvariant { residual: f64 },
    #[error("state is not faithful (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotFaithful { min_eigenvalue: f64 },
    #[error("implementing operator is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("quantum group is not of Kac type")]
    NotKac,
    #[error("independent routes disagree: {0}")]
    OracleMismatch(String),
    #[error("contract violated: {0}")]
    ContractViolation(String),
    #[error(transparent)]
    Corep(CorepError),
    #[error(transparent)]
    Qg(#[from] QgError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<CorepError> for ActionError {
    fn from(e: CorepError) -> Self {
        match e {
            CorepError::NotUnitary { residual } => ActionError::NotUnitary { residual },
            CorepError::Qg(QgError::NotKac { .. }) => ActionError::NotKac,
            other => ActionError::Corep(other),
        }
    }
}
