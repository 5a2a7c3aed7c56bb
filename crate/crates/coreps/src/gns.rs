//! GNS corepresentations of states on the dual and condition ℛ.

use numlin::{hermitian_eig, inner, CMatrix, C64};

use crate::corep::{Corep, CorepParent};
use crate::CorepError;

/// Rank tolerance for the GNS Gram matrix.
pub const GNS_RANK_TOL: f64 = 1e-10;
/// Tolerance for the GNS reproduction and condition-ℛ checks.
pub const GNS_TOL: f64 = 1e-9;
/// Tolerance of [`check_condition_R`].
pub const CONDITION_R_TOL: f64 = 1e-8;

/// GNS data of a state `μ` on the dual.
#[derive(Debug, Clone)]
pub struct Gns {
    pub corep: Corep,
    /// Cyclic vector `Ω = Λ(1)`.
    pub omega: Vec<C64>,
    /// `J` as the matrix `M` of `ξ ↦ M conj(ξ)`, present when `μ∘R̂ = μ`.
    pub j: Option<CMatrix>,
    /// `max_g |μ(e_g) − ⟨Ω, φ(e_g)Ω⟩|`.
    pub reproduction_residual: f64,
}

/// GNS construction of a state given by its values `μ(e_g)` on matrix units.
///
/// With `Λ(e_g)` the columns of `X`, where `X*X` is the Gram matrix
/// `[μ(e_g* e_h)]`, the representation is `φ(e_g) = X L_g X⁺`. When `μ` is
/// `R̂`-invariant, `J Λ(x) = Λ(R̂(x)*)` is returned and condition ℛ is
/// asserted.
pub fn gns(parent: &CorepParent, mu: &[C64]) -> Result<Gns, CorepError> {
    let p = parent.finite()?;
    let d = p.qg.dim();
    if mu.len() != d {
        return Err(CorepError::Schema(format!("{} values given, dual has dimension {d}", mu.len())));
    }
    let dual = &p.dual;
    let unit = dual.unit();
    let norm: C64 = mu.iter().zip(&unit).map(|(m, u)| m * u).sum();
    if (norm - 1.0).norm() > GNS_TOL {
        return Err(CorepError::NotAState(format!("μ(1) = {norm}")));
    }
    // G[g][h] = μ(e_g* e_h) = δ_αβ δ_ik μ(e^α_jl) for g = (α,i,j), h = (β,k,l).
    let gram = CMatrix::from_fn(d, d, |g, h| {
        let (a, i, j) = dual.split_flat(g);
        let (b, k, l) = dual.split_flat(h);
        if a == b && i == k {
            mu[dual.flat_index(a, j, l)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let herm = gram.hermitian_defect();
    if herm > GNS_TOL {
        return Err(CorepError::NotAState(format!("Gram matrix not Hermitian ({herm:.3e})")));
    }
    let eig = hermitian_eig(&gram.hermitian_part())?;
    let scale = eig.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if eig.values[0] < -GNS_TOL * scale {
        return Err(CorepError::NotAState(format!("Gram matrix has eigenvalue {:.3e}", eig.values[0])));
    }
    let kept: Vec<usize> = (0..d).filter(|&k| eig.values[k] > GNS_RANK_TOL * scale).collect();
    let r = kept.len();
    let v_kept = CMatrix::from_fn(d, r, |g, k| eig.vectors[(g, kept[k])]);
    let sqrt_l: Vec<C64> = kept.iter().map(|&k| C64::new(eig.values[k].sqrt(), 0.0)).collect();
    let inv_sqrt_l: Vec<C64> = kept.iter().map(|&k| C64::new(1.0 / eig.values[k].sqrt(), 0.0)).collect();
    let x = &CMatrix::diag(&sqrt_l) * &v_kept.adjoint();
    let x_plus = &v_kept * &CMatrix::diag(&inv_sqrt_l);
    let phi: Vec<CMatrix> = (0..d)
        .map(|g| {
            let l_g = left_mult(parent, g);
            &(&x * &l_g) * &x_plus
        })
        .collect();
    let corep = Corep::from_phi(parent.clone(), r, phi)?;
    let omega = x.matvec(&unit);
    let reproduction_residual =
        (0..d).map(|g| (mu[g] - inner(&omega, &corep.phi(g).matvec(&omega))).norm()).fold(0.0, f64::max);
    if reproduction_residual > GNS_TOL {
        return Err(CorepError::OracleMismatch(format!("⟨Ω, φ(·)Ω⟩ misses μ by {reproduction_residual:.3e}")));
    }
    let r_hat =
        CMatrix::from_columns(d, &(0..d).map(|h| dual.unitary_antipode(&dual.basis_vector(h))).collect::<Vec<_>>());
    let mu_r: Vec<C64> = (0..d).map(|h| (0..d).map(|g| mu[g] * r_hat[(g, h)]).sum()).collect();
    let invariant = mu_r.iter().zip(mu).all(|(a, b)| (a - b).norm() <= GNS_TOL);
    let j =
        if invariant {
            // J(Xx) = X R̂ T conj(x) with x = X⁺ξ, T the transpose permutation.
            let t = CMatrix::from_fn(d, d, |g, h| {
                if dual.transpose_index(h) == g {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            let m = &(&(&x * &r_hat) * &t) * &x_plus.conj();
            if !check_condition_R(&corep, &m)? {
                return Err(CorepError::OracleMismatch("GNS J of an R̂-invariant state fails condition ℛ".into()));
            }
            Some(m)
        } else {
            None
        };
    Ok(Gns { corep, omega, j, reproduction_residual })
}

/// Left multiplication by `e_g` on the dual in matrix-unit coordinates.
fn left_mult(parent: &CorepParent, g: usize) -> CMatrix {
    let p = parent.finite().expect("finite parent");
    let d = p.qg.dim();
    let (a, i, j) = p.dual.split_flat(g);
    let n = p.dual.blocks()[a];
    let mut m = CMatrix::zeros(d, d);
    for l in 0..n {
        m[(p.dual.flat_index(a, i, l), p.dual.flat_index(a, j, l))] = C64::new(1.0, 0.0);
    }
    m
}

/// Condition ℛ: `(R⊗j)(U) = U` with `j(x) = J x* J` and `J ξ = M conj(ξ)`.
///
/// Requires `J² = 1`, that is `M conj(M) = I`, to 1e−9.
#[allow(non_snake_case)]
pub fn check_condition_R(u: &Corep, m: &CMatrix) -> Result<bool, CorepError> {
    let p = u.parent().finite()?;
    let n = u.dim();
    if m.rows() != n || m.cols() != n {
        return Err(CorepError::Schema(format!("J must be {n}×{n}")));
    }
    let residual = (m * &m.conj()).dist(&CMatrix::identity(n));
    if residual > GNS_TOL {
        return Err(CorepError::NotInvolutive { residual });
    }
    let r = p.qg.antipode_matrix();
    let comps = u.u_components()?;
    // j(U_i) = J U_i* J = M U_iᵀ conj(M).
    let mc = m.conj();
    let jt: Vec<CMatrix> = comps.iter().map(|ui| &(m * &ui.transpose()) * &mc).collect();
    let d = p.qg.dim();
    let worst = (0..d)
        .map(|k| {
            let mut s = CMatrix::zeros(n, n);
            for (i, t) in jt.iter().enumerate() {
                let w = r[(k, i)];
                if w.norm() > 0.0 {
                    s.axpy(w, t);
                }
            }
            s.dist(&comps[k])
        })
        .fold(0.0, f64::max);
    Ok(worst <= CONDITION_R_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corep::FiniteParent;
    use numlin::c;
    use qg_core::presets;

    fn parent(q: qg_core::FiniteQg) -> CorepParent {
        FiniteParent::new(q).unwrap().into()
    }

    fn tracial(parent: &CorepParent) -> Vec<C64> {
        let p = parent.finite().unwrap();
        let total: usize = p.dual.blocks().iter().map(|n| n * n).sum();
        (0..p.qg.dim())
            .map(|g| {
                let (a, i, j) = p.dual.split_flat(g);
                let n = p.dual.blocks()[a];
                if i == j {
                    c(n as f64 / total as f64, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            })
            .collect()
    }

    #[test]
    fn counit_gives_trivial_corep() {
        let p = parent(presets::kac_paljutkin().unwrap());
        let eps = p.counit_values();
        let g = gns(&p, &eps).unwrap();
        assert_eq!(g.corep.dim(), 1);
        for k in 0..8 {
            assert!((g.corep.phi(k)[(0, 0)] - eps[k]).norm() < 1e-12);
        }
        assert!(g.j.is_some());
    }

    #[test]
    fn tracial_state_on_kp_has_dimension_eight() {
        let p = parent(presets::kac_paljutkin().unwrap());
        let g = gns(&p, &tracial(&p)).unwrap();
        assert_eq!(g.corep.dim(), 8);
        assert!(g.reproduction_residual < 1e-12);
        assert!(g.j.is_some());
    }

    #[test]
    fn mixture_on_dual_z2_is_two_dimensional() {
        let p = parent(presets::dual_z(2).unwrap());
        let g = gns(&p, &[c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        assert_eq!(g.corep.dim(), 2);
        for w in &g.omega {
            assert!((w.norm() - 0.5f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn non_states_rejected() {
        let p = parent(presets::dual_z(2).unwrap());
        assert!(matches!(gns(&p, &[c(1.5, 0.0), c(-0.5, 0.0)]), Err(CorepError::NotAState(_))));
        assert!(matches!(gns(&p, &[c(0.5, 0.0), c(0.4, 0.0)]), Err(CorepError::NotAState(_))));
    }

    #[test]
    fn condition_r_examples() {
        let one = CMatrix::identity(1);
        let z2 = parent(presets::dual_z(2).unwrap());
        assert!(check_condition_R(&Corep::trivial(z2.clone(), 1), &one).unwrap());
        assert!(check_condition_R(&Corep::irrep(z2, 1).unwrap(), &one).unwrap());
        let z4 = parent(presets::dual_z(4).unwrap());
        assert!(!check_condition_R(&Corep::irrep(z4, 1).unwrap(), &one).unwrap());
    }

    #[test]
    fn non_involutive_j_rejected() {
        let z2 = parent(presets::dual_z(2).unwrap());
        let m = CMatrix::identity(1).scale(c(0.0, 1.0));
        let _ = check_condition_R(&Corep::trivial(z2.clone(), 1), &m).unwrap();
        let m2 = CMatrix::identity(1).scale(c(2.0, 0.0));
        assert!(matches!(check_condition_R(&Corep::trivial(z2, 1), &m2), Err(CorepError::NotInvolutive { .. })));
    }
}
