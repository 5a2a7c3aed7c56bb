//! Actions of finite quantum groups on finite-dimensional von Neumann
//! algebras: validation, invariant states, unitary implementation, the
//! conditional expectation onto the fixed points, cone preservation and
//! spectral gaps.

mod error;

pub mod action;
pub mod block;
pub mod bridge;
pub mod cone;
pub mod expectation;
pub mod gap;
pub mod implement;
pub mod presets;
pub mod vvbar;

pub use action::{density_from_values, Action, ActionDoc, ActionResiduals, ACTION_TOL, FAITHFUL_TOL};
pub use block::BlockAlgebra;
pub use bridge::{almost_invariance_bridge, BridgeReport};
pub use cone::{cone_preservation_check, cone_test_family, preserves_cone, slice_matrix, ConeReport, CONE_TOL};
pub use error::ActionError;
pub use expectation::{
    bimodule_defect, fixed_point_expectation, unit_perturbation, ExpectationReport, FixedPointExpectation,
    EXPECTATION_TOL,
};
pub use gap::{image_residual, spectral_gap_report, SpectralGapReport, IMAGE_TOL, POSITIVE_TOL};
pub use implement::{implement, Implementation, IMPLEMENTATION_TOL};
pub use presets::{preset_action, preset_actions, PRESET_ACTION_NAMES};
pub use vvbar::{v_vbar_implementation_check, VVbarReport, VVBAR_TOL};
