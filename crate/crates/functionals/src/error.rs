use numlin::LinalgError;
use qg_core::QgError;
use thiserror::Error;

/// Failures of the convolution calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionalError {
    #[error("functionals live on different parents ({0} vs {1})")]
    ParentMismatch(String, String),
    #[error("coefficient vector has length {got}, parent needs {expected}")]
    Length { got: usize, expected: usize },
    #[error("not a state: {0}")]
    NotAState(String),
    #[error("positivity lost (minimum Gram eigenvalue {min_eigenvalue:.3e})")]
    PositivityLost { min_eigenvalue: f64 },
    #[error("convolution series disagrees with the closed form (residual {residual:.3e})")]
    SeriesDivergence { residual: f64 },
    #[error("not a generating functional: {0}")]
    NotGenerating(String),
    #[error("operation needs a finite quantum group parent")]
    NeedsFiniteParent,
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Qg(#[from] QgError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
