//! Dense-image analysis for morphisms of finite quantum groups.
//!
//! For `π: A_G → A_H` intertwining the coproducts, four conditions are
//! evaluated by rank computations:
//! 1. `ω ↦ π((id⊗ω)W_G)` is injective on functionals of the dual of `G`;
//! 2. the same map composed with the Haar-GNS regular representation of `A_H` is injective;
//! 3. the slices `(ω⊗id)V` of `V = (π⊗id)W_G` span the whole dual block algebra of `G`;
//! 4. the dual morphism `π̂` from the dual block algebra of `H` to that of `G` is surjective.
//!
//! At finite dimension all four amount to injectivity of `π`, so their
//! verdicts must coincide.

use numlin::{c, hermitian_eig, rank, CMatrix, C64};

use crate::group::FiniteGroup;
use crate::qg::{tensor, FiniteQg};
use crate::QgError;

/// Tolerance for the morphism checks.
pub const MORPHISM_TOL: f64 = 1e-9;
const RANK_TOL: f64 = 1e-10;

/// Verdicts and ranks for the four conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseImageReport {
    pub conditions: [bool; 4],
    pub ranks: [usize; 4],
    /// Full rank required for each condition: the dimension of `A_G`.
    pub target_rank: usize,
    pub morphism_residual: f64,
}

impl DenseImageReport {
    /// Common verdict of the four conditions.
    pub fn dense(&self) -> bool {
        self.conditions[0]
    }

    pub fn consistent(&self) -> bool {
        self.conditions.iter().all(|&b| b == self.conditions[0])
    }
}

/// Largest residual among unitality, multiplicativity, star and coproduct intertwining.
pub fn morphism_residual(pi: &CMatrix, g: &FiniteQg, h: &FiniteQg) -> Result<f64, QgError> {
    let (dg, dh) = (g.dim(), h.dim());
    if pi.rows() != dh || pi.cols() != dg {
        return Err(QgError::Schema(format!("morphism must be {dh}×{dg}, got {}×{}", pi.rows(), pi.cols())));
    }
    let images: Vec<Vec<C64>> = (0..dg).map(|i| pi.column(i)).collect();
    let dist = |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>();
    let unit = dist(&pi.matvec(g.unit()), h.unit()).sqrt();
    let mut mult = 0.0;
    let mut star = 0.0;
    let mut cop = 0.0;
    for i in 0..dg {
        for j in 0..dg {
            let l = pi.matvec(&g.mul(&g.basis_vector(i), &g.basis_vector(j)));
            mult += dist(&l, &h.mul(&images[i], &images[j]));
        }
        star += dist(&pi.matvec(&g.star(&g.basis_vector(i))), &h.star(&images[i]));
        let dgi = g.comult(&g.basis_vector(i));
        let mut lhs = vec![c(0.0, 0.0); dh * dh];
        for (p, v) in dgi.iter().enumerate() {
            if v.norm() == 0.0 {
                continue;
            }
            let t = tensor(&images[p / dg], &images[p % dg]);
            for (o, x) in lhs.iter_mut().zip(t) {
                *o += v * x;
            }
        }
        cop += dist(&lhs, &h.comult(&images[i]));
    }
    Ok(unit.max(mult.sqrt()).max(star.sqrt()).max(cop.sqrt()))
}

/// Evaluates the four dense-image conditions for `π: A_G → A_H`.
pub fn dense_image_report(pi: &CMatrix, g: &FiniteQg, h: &FiniteQg) -> Result<DenseImageReport, QgError> {
    let residual = morphism_residual(pi, g, h)?;
    if !(residual <= MORPHISM_TOL) {
        return Err(QgError::NotAMorphism { residual });
    }
    let (dg, dh) = (g.dim(), h.dim());
    let slice_map = pi * g.ubasis();

    // (1) ω ↦ π(Σ_g ω(e_g) u_g).
    let r1 = rank(&slice_map, RANK_TOL);

    // (2) Through the regular representation λ_H(a) = G^{1/2} L(a) G^{-1/2}.
    let gram = h.gram(h.haar_vector()).hermitian_part();
    let ge = hermitian_eig(&gram)?;
    let sq = ge.map(|x| c(x.max(0.0).sqrt(), 0.0));
    let isq = ge.map(|x| c(1.0 / x.max(1e-300).sqrt(), 0.0));
    let mut reduced = CMatrix::zeros(dh * dh, dg);
    for k in 0..dg {
        let lam = &(&sq * &h.left_mult_matrix(&slice_map.column(k))) * &isq;
        reduced.set_column(k, lam.data());
    }
    let r2 = rank(&reduced, RANK_TOL);

    // (3) Slices (ω_k⊗id)V = Σ_g ω_k(π(u_g)) e_g over the coordinate functionals ω_k of A_H.
    let mut slices = CMatrix::zeros(dg, dh);
    for k in 0..dh {
        let col: Vec<C64> = (0..dg).map(|gi| slice_map[(k, gi)]).collect();
        slices.set_column(k, &col);
    }
    let r3 = rank(&slices, RANK_TOL);

    // (4) π̂(e^H_k) = Σ_g ⟨e^H_k, π(u_g)⟩ e^G_g.
    let dual_map = (&(h.ubasis_inv() * pi) * g.ubasis()).transpose();
    let r4 = rank(&dual_map, RANK_TOL);

    let ranks = [r1, r2, r3, r4];
    let conditions = ranks.map(|r| r == dg);
    let report = DenseImageReport { conditions, ranks, target_rank: dg, morphism_residual: residual };
    if !report.consistent() {
        return Err(QgError::OracleMismatch(format!("dense-image conditions disagree: ranks {ranks:?} of {dg}")));
    }
    Ok(report)
}

/// `λ_g ↦ λ_{f(g)}` between group algebras, for a homomorphism `f`.
pub fn group_algebra_map(source: &FiniteGroup, target: &FiniteGroup, hom: &[usize]) -> CMatrix {
    CMatrix::from_fn(target.order(), source.order(), |t, s| if hom[s] == t { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

/// Pullback `C(G) → C(H)`, `δ_g ↦ Σ_{f(h)=g} δ_h`, along a homomorphism `f: H → G`.
pub fn function_algebra_pullback(hom: &[usize], g_order: usize) -> CMatrix {
    CMatrix::from_fn(hom.len(), g_order, |h, gi| if hom[h] == gi { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

/// Whether `f` is a homomorphism between the given groups.
pub fn is_homomorphism(source: &FiniteGroup, target: &FiniteGroup, hom: &[usize]) -> bool {
    hom.len() == source.order()
        && hom.iter().all(|&x| x < target.order())
        && (0..source.order())
            .all(|a| (0..source.order()).all(|b| hom[source.table[a][b]] == target.table[hom[a]][hom[b]]))
}

/// The three reference morphisms: identity on Kac–Paljutkin, `ℂ[ℤ_2] → ℂ[ℤ_4]`
/// induced by the subgroup inclusion, and `ℂ[ℤ_4] → ℂ[ℤ_2]` induced by the quotient.
pub fn reference_examples() -> Result<Vec<(String, FiniteQg, FiniteQg, CMatrix)>, QgError> {
    let kp = crate::presets::kac_paljutkin()?;
    let id = CMatrix::identity(kp.dim());
    let z2 = FiniteGroup::cyclic(2);
    let z4 = FiniteGroup::cyclic(4);
    let inclusion = [0, 2];
    let quotient = [0, 1, 0, 1];
    let sub = group_algebra_map(&z2, &z4, &inclusion);
    let quo = group_algebra_map(&z4, &z2, &quotient);
    Ok(vec![
        ("identity on kac-paljutkin".into(), kp.clone(), kp, id),
        ("subgroup Z2 ⊂ Z4 on group algebras".into(), crate::presets::dual_z(2)?, crate::presets::dual_z(4)?, sub),
        ("quotient Z4 → Z2 on group algebras".into(), crate::presets::dual_z(4)?, crate::presets::dual_z(2)?, quo),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn reference_verdicts() {
        let verdicts: Vec<bool> = reference_examples()
            .unwrap()
            .iter()
            .map(|(_, g, h, pi)| dense_image_report(pi, g, h).unwrap().dense())
            .collect();
        assert_eq!(verdicts, vec![true, true, false]);
    }

    #[test]
    fn function_algebra_side_has_transposed_verdicts() {
        let z2 = FiniteGroup::cyclic(2);
        let z4 = FiniteGroup::cyclic(4);
        assert!(is_homomorphism(&z2, &z4, &[0, 2]));
        assert!(is_homomorphism(&z4, &z2, &[0, 1, 0, 1]));
        // Restriction C(ℤ_4) → C(ℤ_2) along the inclusion kills functions off the subgroup.
        let restrict = function_algebra_pullback(&[0, 2], 4);
        let r = dense_image_report(&restrict, &presets::fun_z(4).unwrap(), &presets::fun_z(2).unwrap()).unwrap();
        assert!(!r.dense());
        assert_eq!(r.ranks, [2, 2, 2, 2]);
        // Pullback C(ℤ_2) → C(ℤ_4) along the quotient is injective.
        let pull = function_algebra_pullback(&[0, 1, 0, 1], 2);
        let r = dense_image_report(&pull, &presets::fun_z(2).unwrap(), &presets::fun_z(4).unwrap()).unwrap();
        assert!(r.dense());
    }

    #[test]
    fn non_morphism_rejected() {
        let g = presets::dual_z(2).unwrap();
        let bad = CMatrix::from_real_rows(&[&[1.0, 0.5], &[0.0, 0.5]]);
        assert!(matches!(dense_image_report(&bad, &g, &g), Err(QgError::NotAMorphism { .. })));
    }
}
