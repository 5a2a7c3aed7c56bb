//! Spectral gaps of implemented actions.
//!
//! Three indicators are computed independently: the Kazhdan gap of `U` on
//! the complement of its invariant vectors, the smallest value of `Ψ(p^U)`
//! over states with `(id⊗Ψ)(U) = 1`, and membership `p^U ∈ Im φ_U`. They
//! are equivalent (the last one when `p^U ≠ 0`), and at finite dimension
//! every action has a spectral gap.

use coreps::{all_units, invariant_kernel, invariant_projection, kazhdan_gap, Corep};
use numlin::{hermitian_eig, svd_jacobi, CMatrix, C64};
use serde::Serialize;

use crate::implement::Implementation;
use crate::ActionError;

/// Tolerance on `p^U ∈ Im φ_U`.
pub const IMAGE_TOL: f64 = 1e-8;
/// Threshold above which a gap or a value of `Ψ(p^U)` counts as non-zero.
pub const POSITIVE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct SpectralGapReport {
    pub rank_p: usize,
    /// Kazhdan gap on `Inv(U)^⊥` against `Q`, `∞` when that space is zero.
    pub gap: f64,
    pub q_size: usize,
    pub spectral_gap: bool,
    /// `min Ψ(p^U)` over states with `(id⊗Ψ)(U) = 1`; `None` if there are none.
    pub min_psi_p: Option<f64>,
    pub psi_condition: bool,
    /// Distance from `p^U` to the span of `φ_U(e_g)`.
    pub image_residual: f64,
    pub p_in_image: bool,
    pub consistent: bool,
}

/// Distance (Frobenius) from `p` to the span of the matrices `φ(e_g)`.
pub fn image_residual(u: &Corep, p: &CMatrix) -> f64 {
    let n = u.dim();
    let cols: Vec<Vec<C64>> = u.phis().iter().map(|m| m.data().to_vec()).collect();
    let phi = CMatrix::from_columns(n * n, &cols);
    let svd = svd_jacobi(&phi);
    let top = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let mut residual = p.data().to_vec();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= 1e-10 * top.max(1.0) {
            continue;
        }
        let b: Vec<C64> = phi.matvec(&svd.v.column(k)).iter().map(|z| z / s).collect();
        let coef = numlin::inner(&b, &residual);
        for (r, bi) in residual.iter_mut().zip(&b) {
            *r -= coef * bi;
        }
    }
    numlin::vec_norm(&residual)
}

/// Reports the three spectral-gap indicators for `Q` (default: all dual
/// matrix units) and asserts their consistency and a positive gap.
pub fn spectral_gap_report(imp: &Implementation, q: Option<&[Vec<C64>]>) -> Result<SpectralGapReport, ActionError> {
    let u = imp.corep();
    let default_q;
    let q = match q {
        Some(q) => q,
        None => {
            default_q = all_units(u.parent());
            &default_q
        }
    };
    let p = invariant_projection(u)?;
    let rank_p = p.trace().re.round() as usize;
    let gap = kazhdan_gap(u, q)?;
    let spectral_gap = gap > POSITIVE_TOL;
    let k = invariant_kernel(u);
    let min_psi_p = if k.cols() == 0 {
        None
    } else {
        Some(hermitian_eig(&(&(&k.adjoint() * &p) * &k).hermitian_part())?.values[0])
    };
    let psi_condition = min_psi_p.is_none_or(|v| v > POSITIVE_TOL);
    let image_residual = image_residual(u, &p);
    let p_in_image = image_residual < IMAGE_TOL;
    let consistent = spectral_gap == psi_condition && (rank_p == 0 || p_in_image == spectral_gap);
    let report = SpectralGapReport {
        rank_p,
        gap,
        q_size: q.len(),
        spectral_gap,
        min_psi_p,
        psi_condition,
        image_residual,
        p_in_image,
        consistent,
    };
    if !consistent {
        return Err(ActionError::OracleMismatch(format!("spectral-gap indicators disagree: {report:?}")));
    }
    if !spectral_gap {
        return Err(ActionError::ContractViolation(format!("finite-dimensional gap must be positive, got {gap:.3e}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Action;
    use crate::implement::implement;
    use coreps::{cyclic_generator, FiniteParent};
    use qg_core::presets;

    #[test]
    fn trivial_action_has_full_invariant_projection() {
        let p = FiniteParent::new(presets::dual_s3().unwrap()).unwrap();
        let imp = implement(&Action::trivial(p, &[1, 2]).unwrap()).unwrap();
        let r = spectral_gap_report(&imp, None).unwrap();
        assert_eq!(r.rank_p, 5);
        assert!(r.gap.is_infinite() && r.p_in_image);
    }

    #[test]
    fn comultiplication_of_cyclic_duals() {
        for n in [3usize, 4, 6] {
            let p = FiniteParent::new(presets::dual_z(n).unwrap()).unwrap();
            let imp = implement(&Action::comultiplication(p).unwrap()).unwrap();
            let x = cyclic_generator(imp.corep()).unwrap();
            let r = spectral_gap_report(&imp, Some(&[x])).unwrap();
            assert_eq!(r.rank_p, 1);
            let expect = 2.0 * (std::f64::consts::PI / n as f64).sin();
            assert!((r.gap - expect).abs() < 1e-10, "n = {n}: {} vs {expect}", r.gap);
        }
    }

    #[test]
    fn grading_has_rank_two() {
        let p = FiniteParent::new(presets::dual_z(2).unwrap()).unwrap();
        let imp = implement(&Action::grading(p, &[2], &[0, 1]).unwrap()).unwrap();
        let r = spectral_gap_report(&imp, None).unwrap();
        assert_eq!(r.rank_p, 2);
        assert!(r.p_in_image && r.image_residual < 1e-10);
    }
}
