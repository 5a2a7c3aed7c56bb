//! Named example actions.

use coreps::{Corep, CorepParent, FiniteParent};
use qg_core::presets as qg;

use crate::action::Action;
use crate::ActionError;

/// Names accepted by [`preset_action`], in the order of [`preset_actions`].
pub const PRESET_ACTION_NAMES: &[&str] = &[
    "trivial-dual-z2-m2",
    "grading-dual-z2-m2",
    "grading-dual-z3-c-m2",
    "coproduct-dual-s3",
    "coproduct-kac-paljutkin",
    "coproduct-fun-s3",
    "coproduct-dual-z4",
    "adjoint-fun-s3-standard",
];

fn parent(q: Result<qg_core::FiniteQg, qg_core::QgError>) -> Result<std::sync::Arc<FiniteParent>, ActionError> {
    Ok(FiniteParent::new(q?)?)
}

/// Builds a named example action.
pub fn preset_action(name: &str) -> Result<Action, ActionError> {
    match name {
        "trivial-dual-z2-m2" => Action::trivial(parent(qg::dual_z(2))?, &[2]),
        "grading-dual-z2-m2" => Action::grading(parent(qg::dual_z(2))?, &[2], &[0, 1]),
        "grading-dual-z3-c-m2" => Action::grading(parent(qg::dual_z(3))?, &[1, 2], &[0, 1, 2]),
        "coproduct-dual-s3" => Action::comultiplication(parent(qg::dual_s3())?),
        "coproduct-kac-paljutkin" => Action::comultiplication(parent(qg::kac_paljutkin())?),
        "coproduct-fun-s3" => Action::comultiplication(parent(qg::fun_s3())?),
        "coproduct-dual-z4" => Action::comultiplication(parent(qg::dual_z(4))?),
        "adjoint-fun-s3-standard" => {
            let v = Corep::irrep(CorepParent::Finite(parent(qg::fun_s3())?), 2)?;
            Action::adjoint(&v)
        }
        other => Err(ActionError::Schema(format!("unknown action preset {other:?}"))),
    }
}

/// All named example actions with their names.
pub fn preset_actions() -> Result<Vec<(&'static str, Action)>, ActionError> {
    PRESET_ACTION_NAMES.iter().map(|&n| Ok((n, preset_action(n)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_build_and_validate() {
        for (name, a) in preset_actions().unwrap() {
            let r = a.residuals();
            assert!(r.multiplicativity < 1e-9 && r.action_equation < 1e-9, "{name}: {r:?}");
            assert!(a.theta().is_some(), "{name}");
        }
        assert!(preset_action("nope").is_err());
    }
}
