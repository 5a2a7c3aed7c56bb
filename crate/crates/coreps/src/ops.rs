//! Tensor products, contragredients and intertwiners.

use numlin::{inverse, kron, null_space, psd_sqrt, svd_jacobi, CMatrix};
use qg_core::SeededRng;

use crate::corep::{Corep, CorepParent, COREP_TOL};
use crate::CorepError;

/// `U ⊤ V = U_12 V_13` on `H_u ⊗ H_v`, with `φ = (φ_u⊗φ_v)∘σ∘Δ̂`.
///
/// The result is checked against the direct leg product `U_12 V_13`.
pub fn tensor(u: &Corep, v: &Corep) -> Result<Corep, CorepError> {
    u.check_parent(v)?;
    let out = match u.parent() {
        CorepParent::Finite(p) => {
            let phi = (0..p.qg.dim())
                .map(|g| {
                    let mut m = CMatrix::zeros(u.dim() * v.dim(), u.dim() * v.dim());
                    for &(a, b, w) in p.dual.comult_terms(g) {
                        m.axpy(w, &kron(u.phi(b), v.phi(a)));
                    }
                    m
                })
                .collect();
            let out = Corep::from_phi_unchecked(u.parent().clone(), u.dim() * v.dim(), phi)?;
            // Direct route: U_12 V_13 = Σ_k e_k ⊗ Σ_{i,j} [e_i e_j]_k U_i ⊗ V_j.
            let direct = leg_product(u, v, false)?;
            check_components(&out, &direct, "tensor product against U_12 V_13")?;
            out
        }
        CorepParent::Window(_) => {
            let phi = (0..u.parent().len()).map(|g| kron(u.phi(g), v.phi(g))).collect();
            Corep::from_phi_unchecked(u.parent().clone(), u.dim() * v.dim(), phi)?
        }
    };
    out.validate()?;
    Ok(out)
}

/// `U ⊤̄ V = V_13 U_12` on `H_u ⊗ H_v`, with `φ = (φ_u⊗φ_v)∘Δ̂`.
///
/// The result is checked against the direct leg product `V_13 U_12`.
pub fn tensor_bar(u: &Corep, v: &Corep) -> Result<Corep, CorepError> {
    u.check_parent(v)?;
    let out = match u.parent() {
        CorepParent::Finite(p) => {
            let phi = (0..p.qg.dim())
                .map(|g| {
                    let mut m = CMatrix::zeros(u.dim() * v.dim(), u.dim() * v.dim());
                    for &(a, b, w) in p.dual.comult_terms(g) {
                        m.axpy(w, &kron(u.phi(a), v.phi(b)));
                    }
                    m
                })
                .collect();
            let out = Corep::from_phi_unchecked(u.parent().clone(), u.dim() * v.dim(), phi)?;
            let direct = leg_product(u, v, true)?;
            check_components(&out, &direct, "tensor product against V_13 U_12")?;
            out
        }
        CorepParent::Window(_) => {
            let phi = (0..u.parent().len()).map(|g| kron(u.phi(g), v.phi(g))).collect();
            Corep::from_phi_unchecked(u.parent().clone(), u.dim() * v.dim(), phi)?
        }
    };
    out.validate()?;
    Ok(out)
}

/// Components of `U_12 V_13`, or of `V_13 U_12` when `reversed`.
fn leg_product(u: &Corep, v: &Corep, reversed: bool) -> Result<Vec<CMatrix>, CorepError> {
    let p = u.parent().finite()?;
    let d = p.qg.dim();
    let uc = u.u_components()?;
    let vc = v.u_components()?;
    let n = u.dim() * v.dim();
    let mut out = vec![CMatrix::zeros(n, n); d];
    for i in 0..d {
        for j in 0..d {
            let terms = if reversed { p.qg.mult_terms(j, i) } else { p.qg.mult_terms(i, j) };
            if terms.is_empty() {
                continue;
            }
            let t = kron(&uc[i], &vc[j]);
            for &(k, w) in terms {
                out[k].axpy(w, &t);
            }
        }
    }
    Ok(out)
}

fn check_components(u: &Corep, expected: &[CMatrix], what: &str) -> Result<(), CorepError> {
    let got = u.u_components()?;
    let r = got.iter().zip(expected).map(|(a, b)| a.dist(b)).fold(0.0, f64::max);
    if r <= COREP_TOL {
        Ok(())
    } else {
        Err(CorepError::OracleMismatch(format!("{what}: residual {r:.3e}")))
    }
}

/// Contragredient `U^c = (R⊗⊤)U` on the conjugate space, modelled as the
/// same coordinates with entrywise transposition.
pub fn contragredient(u: &Corep) -> Result<Corep, CorepError> {
    match u.parent() {
        CorepParent::Finite(p) => {
            p.qg.require_kac()?;
            let d = p.qg.dim();
            let r = p.qg.antipode_matrix();
            let comps: Vec<CMatrix> = u.u_components()?.iter().map(|m| m.transpose()).collect();
            let uc: Vec<CMatrix> = (0..d)
                .map(|k| {
                    let mut m = CMatrix::zeros(u.dim(), u.dim());
                    for (i, t) in comps.iter().enumerate() {
                        let w = r[(k, i)];
                        if w.norm() > 0.0 {
                            m.axpy(w, t);
                        }
                    }
                    m
                })
                .collect();
            Corep::from_u_components(u.parent().clone(), u.dim(), &uc)
        }
        CorepParent::Window(_) => {
            let phi = u.phis().iter().map(|m| m.conj()).collect();
            Corep::from_phi(u.parent().clone(), u.dim(), phi)
        }
    }
}

/// An intertwiner found by [`intertwiner`].
#[derive(Debug, Clone)]
pub struct Intertwiner {
    /// Unitary `T` with `T φ_u(x) = φ_v(x) T`.
    pub unitary: CMatrix,
    /// `max_g ‖T φ_u(e_g) − φ_v(e_g) T‖`.
    pub residual: f64,
    /// Dimension of the intertwiner space.
    pub space_dim: usize,
}

/// A unitary intertwiner `u → v`, or `None` when the two are inequivalent.
///
/// Solves `T φ_u(x) = φ_v(x) T` on the stored elements, takes a seeded
/// generic element of the solution space and its polar part.
pub fn intertwiner(u: &Corep, v: &Corep) -> Result<Option<Intertwiner>, CorepError> {
    u.check_parent(v)?;
    let (m, n) = (v.dim(), u.dim());
    if m != n {
        return Ok(None);
    }
    let g_count = u.phis().len();
    // Unknown vec(T) with index r*n + s for T[r][s].
    let mut sys = CMatrix::zeros(g_count * m * n, m * n);
    for g in 0..g_count {
        let (pu, pv) = (u.phi(g), v.phi(g));
        for r in 0..m {
            for s in 0..n {
                let row = (g * m + r) * n + s;
                for k in 0..n {
                    sys[(row, r * n + k)] += pu[(k, s)];
                }
                for k in 0..m {
                    sys[(row, k * n + s)] -= pv[(r, k)];
                }
            }
        }
    }
    let basis = null_space(&sys, 1e-10);
    if basis.cols() == 0 {
        return Ok(None);
    }
    let mut rng = SeededRng::new(0);
    let coeffs = rng.complex_vec(basis.cols());
    let t = CMatrix::from_fn(m, n, |r, s| (0..basis.cols()).map(|k| coeffs[k] * basis[(r * n + s, k)]).sum());
    let sv = svd_jacobi(&t).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smin > 1e-8 * smax.max(1.0)) {
        return Ok(None);
    }
    let unitary = &t * &inverse(&psd_sqrt(&(&t.adjoint() * &t))?)?;
    let residual = (0..g_count).map(|g| (&unitary * u.phi(g)).dist(&(v.phi(g) * &unitary))).fold(0.0, f64::max);
    Ok(Some(Intertwiner { unitary, residual, space_dim: basis.cols() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corep::FiniteParent;
    use numlin::C64;
    use qg_core::presets;

    fn parent(q: qg_core::FiniteQg) -> CorepParent {
        FiniteParent::new(q).unwrap().into()
    }

    #[test]
    fn trivial_is_tensor_unit() {
        let p = parent(presets::kac_paljutkin().unwrap());
        let one = Corep::trivial(p.clone(), 1);
        for a in 0..5 {
            let u = Corep::irrep(p.clone(), a).unwrap();
            let t = tensor(&one, &u).unwrap();
            for g in 0..8 {
                assert!(t.phi(g).dist(u.phi(g)) < 1e-12);
            }
        }
    }

    #[test]
    fn characters_of_dual_z_multiply() {
        let n = 5;
        let p = parent(presets::dual_z(n).unwrap());
        for a in 0..n {
            for b in 0..n {
                let t = tensor(&Corep::irrep(p.clone(), a).unwrap(), &Corep::irrep(p.clone(), b).unwrap()).unwrap();
                let expected = Corep::irrep(p.clone(), (a + b) % n).unwrap();
                for g in 0..n {
                    assert!(t.phi(g).dist(expected.phi(g)) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn contragredient_inverts_characters() {
        let n = 6;
        let p = parent(presets::dual_z(n).unwrap());
        for a in 0..n {
            let c_a = contragredient(&Corep::irrep(p.clone(), a).unwrap()).unwrap();
            let expected = Corep::irrep(p.clone(), (n - a) % n).unwrap();
            for g in 0..n {
                assert!(c_a.phi(g).dist(expected.phi(g)) < 1e-12);
            }
        }
        let one = Corep::trivial(p.clone(), 1);
        assert!(contragredient(&one).unwrap().phi(0).dist(one.phi(0)) < 1e-15);
    }

    #[test]
    fn standard_irrep_of_s3_is_self_conjugate() {
        let p = parent(presets::fun_s3().unwrap());
        let fp = p.finite().unwrap().clone();
        let two = fp.dual.blocks().iter().position(|&n| n == 2).unwrap();
        let u = Corep::irrep(p, two).unwrap();
        let uc = contragredient(&u).unwrap();
        let t = intertwiner(&u, &uc).unwrap().expect("equivalent");
        assert!(t.residual < 1e-8);
        assert!(t.unitary.unitarity_defect() < 1e-10);
        let ucc = contragredient(&uc).unwrap();
        let back = intertwiner(&u, &ucc).unwrap().expect("double contragredient");
        assert!(back.residual < 1e-8);
    }

    #[test]
    fn inequivalent_irreps_have_no_intertwiner() {
        let p = parent(presets::kac_paljutkin().unwrap());
        assert!(intertwiner(&Corep::irrep(p.clone(), 1).unwrap(), &Corep::irrep(p.clone(), 2).unwrap())
            .unwrap()
            .is_none());
        let u = Corep::irrep(p, 4).unwrap();
        let perm = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let w = u.conjugate_by(&perm).unwrap();
        assert!(intertwiner(&u, &w).unwrap().unwrap().residual < 1e-10);
    }

    #[test]
    fn tensor_bar_matches_reversed_legs() {
        let p = parent(presets::kac_paljutkin().unwrap());
        let u = Corep::irrep(p.clone(), 4).unwrap();
        let v = Corep::irrep(p, 1).unwrap();
        assert!(tensor_bar(&u, &v).is_ok());
        assert!(tensor(&u, &v).is_ok());
    }

    #[test]
    fn window_tensor_is_pointwise() {
        let p: CorepParent = presets::window_preset("Z(1)", 4).unwrap().into();
        let w = match &p {
            CorepParent::Window(w) => w.clone(),
            _ => unreachable!(),
        };
        let chi = |t: f64| {
            let w = w.clone();
            Corep::window_character(p.clone(), move |g| C64::from_polar(1.0, t * w.as_integer(g).unwrap() as f64))
                .unwrap()
        };
        let prod = tensor(&chi(0.2), &chi(0.5)).unwrap();
        let direct = chi(0.7);
        for g in 0..w.len() {
            assert!((prod.phi(g)[(0, 0)] - direct.phi(g)[(0, 0)]).norm() < 1e-12);
        }
        let conj = contragredient(&chi(0.2)).unwrap();
        assert!((conj.phi(1)[(0, 0)] - C64::from_polar(1.0, -0.2)).norm() < 1e-12);
    }
}
