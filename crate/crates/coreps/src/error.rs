use numlin::LinalgError;
use qg_core::QgError;
use thiserror::Error;

/// Failures of the corepresentation calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorepError {
    #[error("corepresentations live on different parents ({0} vs {1})")]
    ParentMismatch(String, String),
    #[error("not a unital *-representation of the dual: {what} (residual {residual:.3e})")]
    NotARepresentation { what: String, residual: f64 },
    #[error("assembled corepresentation is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("independent routes disagree: {0}")]
    OracleMismatch(String),
    #[error("the set Q of dual elements is empty")]
    EmptyQ,
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("candidate J is not involutive (‖J² − 1‖ = {residual:.3e})")]
    NotInvolutive { residual: f64 },
    #[error("operation needs a finite quantum group parent")]
    NeedsFiniteParent,
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Qg(#[from] QgError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
