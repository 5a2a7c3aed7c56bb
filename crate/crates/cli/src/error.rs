//! Run failures and their exit codes.

use actions::ActionError;
use coreps::CorepError;
use fock::FockError;
use functionals::FunctionalError;
use genfun::GenFunError;
use numlin::LinalgError;
use qg_core::QgError;
use thiserror::Error;

/// Exit code of a run whose checks all passed.
pub const EXIT_OK: i32 = 0;
/// Malformed scenario, unknown preset or experiment, bad parameters.
pub const EXIT_SCHEMA: i32 = 2;
/// Input data violating a structural axiom.
pub const EXIT_AXIOM: i32 = 3;
/// A contract or oracle comparison failed; the report is still written.
pub const EXIT_CONTRACT: i32 = 4;
/// A resource cap was hit.
pub const EXIT_CAP: i32 = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RunError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("axiom violation: {0}")]
    Axiom(String),
    #[error("contract failure: {0}")]
    Contract(String),
    #[error("resource cap: {0}")]
    Cap(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Schema(_) => EXIT_SCHEMA,
            RunError::Axiom(_) => EXIT_AXIOM,
            RunError::Contract(_) => EXIT_CONTRACT,
            RunError::Cap(_) => EXIT_CAP,
        }
    }
}

impl From<LinalgError> for RunError {
    fn from(e: LinalgError) -> Self {
        RunError::Contract(e.to_string())
    }
}

impl From<QgError> for RunError {
    fn from(e: QgError) -> Self {
        let m = e.to_string();
        match e {
            QgError::Schema(_) | QgError::UnknownPreset(_) => RunError::Schema(m),
            QgError::RadiusTooLarge { .. } | QgError::WindowTruncation(_) => RunError::Cap(m),
            QgError::OracleMismatch(_) | QgError::Linalg(_) => RunError::Contract(m),
            _ => RunError::Axiom(m),
        }
    }
}

impl From<FunctionalError> for RunError {
    fn from(e: FunctionalError) -> Self {
        let m = e.to_string();
        match e {
            FunctionalError::Qg(q) => q.into(),
            FunctionalError::ParentMismatch(..)
            | FunctionalError::Length { .. }
            | FunctionalError::Schema(_)
            | FunctionalError::NeedsFiniteParent => RunError::Schema(m),
            FunctionalError::NotAState(_) | FunctionalError::NotGenerating(_) => RunError::Axiom(m),
            _ => RunError::Contract(m),
        }
    }
}

impl From<GenFunError> for RunError {
    fn from(e: GenFunError) -> Self {
        let m = e.to_string();
        match e {
            GenFunError::Functional(f) => f.into(),
            GenFunError::Qg(q) => q.into(),
            GenFunError::Schema(_) | GenFunError::NotNormalized { .. } => RunError::Schema(m),
            GenFunError::StageOverflow { .. } => RunError::Cap(m),
            GenFunError::SelectionFailed { .. } | GenFunError::OracleMismatch(_) | GenFunError::Linalg(_) => {
                RunError::Contract(m)
            }
            _ => RunError::Axiom(m),
        }
    }
}

impl From<CorepError> for RunError {
    fn from(e: CorepError) -> Self {
        let m = e.to_string();
        match e {
            CorepError::Qg(q) => q.into(),
            CorepError::ParentMismatch(..)
            | CorepError::Schema(_)
            | CorepError::NeedsFiniteParent
            | CorepError::EmptyQ => RunError::Schema(m),
            CorepError::NotARepresentation { .. }
            | CorepError::NotUnitary { .. }
            | CorepError::NotAState(_)
            | CorepError::NotInvolutive { .. } => RunError::Axiom(m),
            CorepError::OracleMismatch(_) | CorepError::Linalg(_) => RunError::Contract(m),
        }
    }
}

impl From<ActionError> for RunError {
    fn from(e: ActionError) -> Self {
        let m = e.to_string();
        match e {
            ActionError::Corep(c) => c.into(),
            ActionError::Qg(q) => q.into(),
            ActionError::Schema(_) => RunError::Schema(m),
            ActionError::OracleMismatch(_) | ActionError::ContractViolation(_) | ActionError::Linalg(_) => {
                RunError::Contract(m)
            }
            _ => RunError::Axiom(m),
        }
    }
}

impl From<FockError> for RunError {
    fn from(e: FockError) -> Self {
        let m = e.to_string();
        match e {
            FockError::Corep(c) => c.into(),
            FockError::Schema(_) | FockError::NotTracial { .. } => RunError::Schema(m),
            FockError::CapExceeded { .. } | FockError::DepthExceeded { .. } => RunError::Cap(m),
            FockError::NotInvolutive { .. } | FockError::CompatibilityFailed { .. } => RunError::Axiom(m),
            FockError::OracleMismatch(_) | FockError::Linalg(_) => RunError::Contract(m),
        }
    }
}
