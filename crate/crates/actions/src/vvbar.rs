//! The implementation of `α(x) = V*(1⊗x)V` on `B(K)` is `V⊤̄V^c`.

use coreps::{contragredient, intertwiner, tensor_bar, Corep, CorepParent};
use serde::Serialize;

use crate::action::Action;
use crate::implement::implement;
use crate::ActionError;

/// Tolerance on the equivalence with `V⊤̄V^c`.
pub const VVBAR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct VVbarReport {
    pub equivalent: bool,
    /// Residual of the intertwiner found between the two corepresentations.
    pub intertwiner_residual: f64,
    /// `max_g ‖φ_U(e_g) − φ_{V⊤̄V^c}(e_g)‖` under `L²(B(K), tr) ≅ K⊗K̄`,
    /// `e_ab ↦ e_a ⊗ ē_b`.
    pub canonical_residual: f64,
    pub implementation_residual: f64,
    pub space_dim: usize,
}

/// Compares the implementation of `Ad V*` with `V⊤̄V^c = V^c_13 V_12`.
pub fn v_vbar_implementation_check(v: &Corep) -> Result<VVbarReport, ActionError> {
    let p = match v.parent() {
        CorepParent::Finite(p) => p.clone(),
        CorepParent::Window(_) => return Err(ActionError::Schema("V must live on a finite parent".into())),
    };
    p.qg.require_kac().map_err(|_| ActionError::NotKac)?;
    let imp = implement(&Action::adjoint(v)?)?;
    let target = tensor_bar(v, &contragredient(v)?)?;
    let u = imp.corep();
    let canonical_residual = (0..p.qg.dim()).map(|g| u.phi(g).dist(target.phi(g))).fold(0.0, f64::max);
    let found = intertwiner(u, &target)?;
    let intertwiner_residual = found.as_ref().map_or(f64::INFINITY, |t| t.residual);
    Ok(VVbarReport {
        equivalent: intertwiner_residual < VVBAR_TOL,
        intertwiner_residual,
        canonical_residual,
        implementation_residual: imp.implementation_residual,
        space_dim: u.dim(),
    })
}
