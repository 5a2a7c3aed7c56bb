use coreps::CorepError;
use numlin::LinalgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FockError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("involution data invalid: {what} (residual {residual:.3e})")]
    NotInvolutive { what: String, residual: f64 },
    #[error("truncated Fock space of dimension {total} exceeds the cap {cap}")]
    CapExceeded { total: usize, cap: usize },
    #[error("word of length {needed} exceeds the trustworthy budget {budget} at depth {depth}")]
    DepthExceeded { needed: usize, budget: usize, depth: usize },
    #[error("compatibility (ω⊗ι)(U*)T = T(ω̄⊗ι)(U*) fails (worst residual {residual:.3e})")]
    CompatibilityFailed { residual: f64 },
    #[error("experiment requires Q = I (‖Q − I‖ = {residual:.3e})")]
    NotTracial { residual: f64 },
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error(transparent)]
    Corep(#[from] CorepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
