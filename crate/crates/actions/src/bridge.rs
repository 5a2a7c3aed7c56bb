//! Almost invariance of elements against almost invariance of vectors.
//!
//! For `ξ = Λ_θ(x)`, `(ω⊗id)(U*)ξ − ω(1)ξ = Λ_θ((ω⊗id)α(x) − ω(1)x)` and
//! `‖Λ_θ(y)‖ ≤ ‖y‖ ‖ρ^{1/2}‖_2 = ‖y‖`, so the vector defect is at most
//! `C·δ` with `C = ‖ρ^{1/2}‖_2 = 1`.

use numlin::C64;
use serde::Serialize;

use crate::implement::Implementation;
use crate::ActionError;

#[derive(Debug, Clone, Serialize)]
pub struct BridgeReport {
    /// `max_ω ‖(ω⊗id)α(x) − ω(1)x‖` (operator norm).
    pub delta: f64,
    /// `max_ω ‖(ω⊗id)(U*)Λ_θ(x) − ω(1)Λ_θ(x)‖`.
    pub defect: f64,
    /// `C = ‖ρ^{1/2}‖_2`.
    pub constant: f64,
}

impl BridgeReport {
    pub fn holds(&self) -> bool {
        self.defect <= self.constant * self.delta + 1e-12
    }
}

/// Evaluates both sides of the bridge for an element `x` and functionals
/// `ω` given by their values on the algebra basis.
pub fn almost_invariance_bridge(
    imp: &Implementation,
    x: &[C64],
    omegas: &[Vec<C64>],
) -> Result<BridgeReport, ActionError> {
    let action = imp.action();
    let alg = action.algebra();
    let q = &action.parent().qg;
    let xi = imp.lambda(x);
    let rho = action.theta().expect("implemented actions carry θ");
    let constant = rho.trace().re.sqrt();
    let comps = action.apply(x);
    let mut delta: f64 = 0.0;
    let mut defect: f64 = 0.0;
    for omega in omegas {
        let w1: C64 = omega.iter().zip(q.unit()).map(|(a, b)| a * b).sum();
        let mut y: Vec<C64> = x.iter().map(|v| -w1 * v).collect();
        for (k, comp) in comps.iter().enumerate() {
            for (yi, ci) in y.iter_mut().zip(comp) {
                *yi += omega[k] * ci;
            }
        }
        delta = delta.max(alg.to_matrix(&y).op_norm());
        let moved = imp.corep().slice_star(omega)?.matvec(&xi);
        let diff: Vec<C64> = moved.iter().zip(&xi).map(|(a, b)| a - w1 * b).collect();
        defect = defect.max(numlin::vec_norm(&diff));
    }
    Ok(BridgeReport { delta, defect, constant })
}
