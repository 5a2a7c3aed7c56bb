use thiserror::Error;

/// Failures of the linear algebra kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not Hermitian (‖m − m*‖_F = {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("non-finite entry encountered")]
    NonFinite,
}
