use numlin::LinalgError;
use thiserror::Error;

/// Failures raised while building or checking finite quantum groups and windows.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QgError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("axiom violated: {axiom} (residual {residual:.3e})")]
    AxiomViolation { axiom: String, residual: f64 },
    #[error("no bi-invariant state exists")]
    HaarNotFound,
    #[error("invariant functionals form a {dimension}-dimensional space; input is not a quantum group")]
    NonUnique { dimension: usize },
    #[error("map does not intertwine the coproducts (residual {residual:.3e})")]
    NotAMorphism { residual: f64 },
    #[error("window would hold {count} elements, above the cap of {cap}")]
    RadiusTooLarge { count: usize, cap: usize },
    #[error("window truncation: {0}")]
    WindowTruncation(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("quantum group is not of Kac type (‖S² − id‖ = {residual:.3e})")]
    NotKac { residual: f64 },
    #[error("independent routes disagree: {0}")]
    OracleMismatch(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
