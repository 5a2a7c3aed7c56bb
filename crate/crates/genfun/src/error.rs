use functionals::FunctionalError;
use numlin::{LinalgError, C64};
use qg_core::QgError;
use thiserror::Error;

/// Failures of the generating-functional toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenFunError {
    #[error("L is not self-adjoint (residual {residual:.3e})")]
    NotSelfadjoint { residual: f64 },
    #[error("L does not vanish at the unit (L(1) = {value})")]
    NotVanishing { value: C64 },
    #[error("L is not conditionally negative definite: form value {value:.3e} on a witness in ker ε")]
    NotCND { value: f64, witness: Vec<C64> },
    #[error("cocycle Gram matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:.3e})")]
    GramNotPSD { min_eigenvalue: f64 },
    #[error("L is not central (scalarity residual {residual:.3e})")]
    NotCentral { residual: f64 },
    #[error("L is not S-invariant (residual {residual:.3e})")]
    NotSInvariant { residual: f64 },
    #[error("parent is not of Kac type")]
    NotKac,
    #[error("selection failed at condition ({condition}): {detail}")]
    SelectionFailed { condition: &'static str, detail: String },
    #[error("stage weights leave the double-precision range at stage {stage}")]
    StageOverflow { stage: usize },
    #[error("ζ is not normalised (‖ζ‖ = {norm})")]
    NotNormalized { norm: f64 },
    #[error("independent routes disagree: {0}")]
    OracleMismatch(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Functional(#[from] FunctionalError),
    #[error(transparent)]
    Qg(#[from] QgError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
