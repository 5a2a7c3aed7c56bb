//! The conditional expectation `E = (h⊗id)∘α` onto the fixed-point algebra.

use coreps::invariant_projection;
use numlin::{c, hermitian_eig, null_space, rank, CMatrix, C64};
use qg_core::SeededRng;
use serde::Serialize;

use crate::implement::Implementation;
use crate::ActionError;

/// Tolerance of every identity checked for `E`.
pub const EXPECTATION_TOL: f64 = 1e-9;

/// `N^α` and `E` with the residuals of their defining identities.
#[derive(Debug, Clone)]
pub struct FixedPointExpectation {
    /// Orthonormal columns spanning `N^α = ker(α − 1⊗·)` in flat coordinates.
    pub basis: CMatrix,
    /// `E` as a matrix on flat coordinates.
    pub e: CMatrix,
    pub report: ExpectationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectationReport {
    pub fixed_point_dim: usize,
    /// `‖E∘E − E‖`.
    pub idempotency: f64,
    /// `‖E(1) − 1‖`.
    pub unit_residual: f64,
    /// Smallest eigenvalue of `E(x*x)` over the test family.
    pub positivity_min: f64,
    /// `max_a ‖π(E(a))p − pπ(a)p‖` with `p = p^U`.
    pub bimodule_residual: f64,
    /// `max ‖α(E(x)) − 1⊗E(x)‖` and `max ‖E(α_k(a)) − 1_k E(a)‖`.
    pub invariance_residual: f64,
    /// Distance between the range of `E` and the kernel computation.
    pub kernel_residual: f64,
}

impl FixedPointExpectation {
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        self.e.matvec(x)
    }
}

/// Computes `N^α` as a kernel and `E = (h⊗id)∘α`, asserting `E∘E = E`,
/// `E(1) = 1`, positivity, `E(a)p = pap`, invariance and agreement of the
/// range of `E` with the kernel.
pub fn fixed_point_expectation(imp: &Implementation) -> Result<FixedPointExpectation, ActionError> {
    let action = imp.action();
    let q = &action.parent().qg;
    let alg = action.algebra();
    let (d, m) = (q.dim(), alg.dim());
    let unit = q.unit();
    let mut stacked = action.alpha_matrix().clone();
    for k in 0..d {
        for f in 0..m {
            stacked[(k * m + f, f)] -= unit[k];
        }
    }
    let basis = null_space(&stacked, 1e-10);
    let mut e = CMatrix::zeros(m, m);
    for (k, &hk) in q.haar_vector().iter().enumerate() {
        if hk.norm() > 0.0 {
            e.axpy(hk, &action.component_matrix(k));
        }
    }
    let idempotency = (&e * &e).dist(&e);
    let one = alg.unit();
    let unit_residual = numlin::max_abs_diff(&e.matvec(&one), &one);

    let mut family: Vec<Vec<C64>> = (0..m).map(|f| alg.basis_vector(f)).collect();
    let mut rng = SeededRng::new(7);
    family.extend((0..8).map(|_| rng.complex_vec(m)));
    let mut positivity_min = f64::INFINITY;
    for x in &family {
        let xx = alg.mul(&alg.star(x), x);
        let ex = alg.to_matrix(&e.matvec(&xx));
        positivity_min = positivity_min.min(hermitian_eig(&ex.hermitian_part())?.values[0]);
    }

    let p = invariant_projection(imp.corep())?;
    let mut bimodule_residual: f64 = 0.0;
    let mut invariance_residual: f64 = 0.0;
    for f in 0..m {
        let a = alg.basis_vector(f);
        let ea = e.matvec(&a);
        let lhs = &imp.pi(&ea) * &p;
        let rhs = &(&p * &imp.pi(&a)) * &p;
        bimodule_residual = bimodule_residual.max(lhs.dist(&rhs));
        for (k, comp) in action.apply(&ea).iter().enumerate() {
            let target: Vec<C64> = ea.iter().map(|z| z * unit[k]).collect();
            invariance_residual = invariance_residual.max(numlin::max_abs_diff(comp, &target));
        }
        for k in 0..d {
            let lhs = e.matvec(&action.component(k, &a));
            let target: Vec<C64> = ea.iter().map(|z| z * unit[k]).collect();
            invariance_residual = invariance_residual.max(numlin::max_abs_diff(&lhs, &target));
        }
    }
    // Range of E against the kernel: E fixes the kernel and has its rank.
    let fixed = (&e * &basis).dist(&basis);
    let rank_gap = (rank(&e, 1e-9) as f64 - basis.cols() as f64).abs();
    let kernel_residual = fixed.max(rank_gap);

    let report = ExpectationReport {
        fixed_point_dim: basis.cols(),
        idempotency,
        unit_residual,
        positivity_min,
        bimodule_residual,
        invariance_residual,
        kernel_residual,
    };
    for (what, r) in [
        ("E∘E = E", report.idempotency),
        ("E(1) = 1", report.unit_residual),
        ("E(a)p = pap", report.bimodule_residual),
        ("α-invariance of E", report.invariance_residual),
        ("range of E equals N^α", report.kernel_residual),
    ] {
        if !(r <= EXPECTATION_TOL) {
            return Err(ActionError::OracleMismatch(format!("{what} fails (residual {r:.3e})")));
        }
    }
    if !(report.positivity_min >= -EXPECTATION_TOL) {
        return Err(ActionError::OracleMismatch(format!("E is not positive ({:.3e})", report.positivity_min)));
    }
    Ok(FixedPointExpectation { basis, e, report })
}

/// `max_a ‖π(F(a))p − pπ(a)p‖` for an arbitrary linear map `F` on `N`.
pub fn bimodule_defect(imp: &Implementation, f: &CMatrix) -> Result<f64, ActionError> {
    let p = invariant_projection(imp.corep())?;
    let alg = imp.action().algebra();
    let mut worst: f64 = 0.0;
    for g in 0..alg.dim() {
        let a = alg.basis_vector(g);
        let lhs = &imp.pi(&f.matvec(&a)) * &p;
        let rhs = &(&p * &imp.pi(&a)) * &p;
        worst = worst.max(lhs.dist(&rhs));
    }
    Ok(worst)
}

/// The rank-one map `x ↦ δ θ(x) 1`, used to perturb `E`.
pub fn unit_perturbation(imp: &Implementation, delta: f64) -> CMatrix {
    let alg = imp.action().algebra();
    let m = alg.dim();
    let one = alg.unit();
    let rho = imp.action().theta().expect("implemented actions carry θ");
    let theta: Vec<C64> = (0..m).map(|f| imp.action().state_value(rho, &alg.basis_vector(f))).collect();
    CMatrix::from_fn(m, m, |i, j| one[i] * theta[j] * c(delta, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Action;
    use crate::implement::implement;
    use coreps::FiniteParent;
    use qg_core::presets;

    #[test]
    fn grading_expectation_is_diagonal_compression() {
        let p = FiniteParent::new(presets::dual_z(2).unwrap()).unwrap();
        let imp = implement(&Action::grading(p, &[2], &[0, 1]).unwrap()).unwrap();
        let fpe = fixed_point_expectation(&imp).unwrap();
        assert_eq!(fpe.report.fixed_point_dim, 2);
        let diag = CMatrix::diag_real(&[1.0, 0.0, 0.0, 1.0]);
        assert!(fpe.e.dist(&diag) < 1e-10);
    }

    #[test]
    fn trivial_action_has_identity_expectation() {
        let p = FiniteParent::new(presets::fun_s3().unwrap()).unwrap();
        let imp = implement(&Action::trivial(p, &[2]).unwrap()).unwrap();
        let fpe = fixed_point_expectation(&imp).unwrap();
        assert_eq!(fpe.report.fixed_point_dim, 4);
        assert!(fpe.e.dist(&CMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn comultiplication_is_ergodic() {
        let p = FiniteParent::new(presets::kac_paljutkin().unwrap()).unwrap();
        let imp = implement(&Action::comultiplication(p).unwrap()).unwrap();
        let fpe = fixed_point_expectation(&imp).unwrap();
        assert_eq!(fpe.report.fixed_point_dim, 1);
        // E = h(·)1.
        let alg = imp.action().algebra();
        let rho = imp.action().theta().unwrap();
        for f in 0..alg.dim() {
            let x = alg.basis_vector(f);
            let h = imp.action().state_value(rho, &x);
            let target: Vec<C64> = alg.unit().iter().map(|u| u * h).collect();
            assert!(numlin::max_abs_diff(&fpe.apply(&x), &target) < 1e-10);
        }
    }

    #[test]
    fn perturbed_expectation_breaks_the_bimodule_identity() {
        let p = FiniteParent::new(presets::dual_z(2).unwrap()).unwrap();
        let imp = implement(&Action::grading(p, &[2], &[0, 1]).unwrap()).unwrap();
        let fpe = fixed_point_expectation(&imp).unwrap();
        let mut f = fpe.e.clone();
        f += &unit_perturbation(&imp, 1e-3);
        assert!(bimodule_defect(&imp, &f).unwrap() > 1e-4);
    }
}
