//! The matrices `V^(l)_{(i,j,k),(p,r,s)} = L((u^α_ip)* u^γ_jr u^β_ks)` and
//! their spectral floors.

use functionals::Parent;
use numlin::{c, hermitian_eig, inner, CMatrix, C64};
use serde::Serialize;

use crate::generating::GenFunctional;
use crate::schurmann::SchurmannTriple;
use crate::GenFunError;

/// Tolerance for Hermiticity and for agreement of the two evaluation routes.
pub const V_TOL: f64 = 1e-10;

/// One matrix `V^(l)` with its diagnostics.
#[derive(Debug, Clone)]
pub struct VMatrix {
    pub gamma: usize,
    pub matrix: CMatrix,
    /// `‖V − V*‖` (max entry).
    pub hermitian_residual: f64,
    /// Max entry difference between the structure-constant and cocycle routes.
    pub route_residual: f64,
    /// Smallest eigenvalue `e_l`.
    pub min_eigenvalue: f64,
    pub c_alpha: f64,
    pub c_beta: f64,
    pub c_gamma: f64,
    /// `c_γ − K(α, β, γ)` with `K` assembled from `‖T‖ = √(2c)`.
    pub constructive_bound: f64,
}

/// Summary row of a `V^(l)` computation.
#[derive(Debug, Clone, Serialize)]
pub struct VRow {
    pub gamma: usize,
    pub c_gamma: f64,
    pub min_eigenvalue: f64,
    pub constructive_bound: f64,
    pub hermitian_residual: f64,
    pub route_residual: f64,
}

impl VMatrix {
    pub fn row(&self) -> VRow {
        VRow {
            gamma: self.gamma,
            c_gamma: self.c_gamma,
            min_eigenvalue: self.min_eigenvalue,
            constructive_bound: self.constructive_bound,
            hermitian_residual: self.hermitian_residual,
            route_residual: self.route_residual,
        }
    }
}

/// `K = 2√(2c_α)√(2c_γ) + 2√(2c_α)√(2c_β) + √(2c_γ)√(2c_β)`.
pub fn constructive_k(c_alpha: f64, c_beta: f64, c_gamma: f64) -> f64 {
    let s = |x: f64| (2.0 * x.max(0.0)).sqrt();
    2.0 * s(c_alpha) * s(c_gamma) + 2.0 * s(c_alpha) * s(c_beta) + s(c_gamma) * s(c_beta)
}

/// Builds `V^(l)` for every `γ_l`, checking Hermiticity, the agreement of the
/// direct structure-constant evaluation with the Schürmann expansion
///
/// `δ_ip δ_jr δ_ks (c_α + c_γ + c_β) − δ_ip ⟨c(u^γ_jr*), c(u^β_ks)⟩
///  − δ_ks ⟨c(u^α_ip), c(u^γ_jr)⟩ − ⟨c(u^α_ip), ρ(u^γ_jr) c(u^β_ks)⟩`,
///
/// and the floor `e_l ≥ c_γ − K`. On a window `α, β, γ` are group elements
/// and every `V` is the scalar `L(α⁻¹γβ)`.
pub fn build_v_matrices(
    l: &GenFunctional,
    triple: &SchurmannTriple,
    alpha: usize,
    beta: usize,
    gammas: &[usize],
) -> Result<Vec<VMatrix>, GenFunError> {
    l.require_central()?;
    l.require_s_invariant()?;
    if let Parent::Finite(q) = l.parent() {
        if !q.is_kac() {
            return Err(GenFunError::NotKac);
        }
    }
    let (c_alpha, c_beta) = (l.c(alpha)?, l.c(beta)?);
    gammas
        .iter()
        .map(|&gamma| {
            let c_gamma = l.c(gamma)?;
            let (direct, route) = match l.parent() {
                Parent::Finite(_) => finite_v(l, triple, alpha, beta, gamma, [c_alpha, c_gamma, c_beta])?,
                Parent::Window(_) => window_v(l, triple, alpha, beta, gamma, [c_alpha, c_gamma, c_beta])?,
            };
            let hermitian_residual = (&direct - &direct.adjoint()).max_abs();
            let route_residual = (&direct - &route).max_abs();
            if hermitian_residual > V_TOL {
                return Err(GenFunError::OracleMismatch(format!("V not Hermitian ({hermitian_residual:.3e})")));
            }
            if route_residual > V_TOL {
                return Err(GenFunError::OracleMismatch(format!(
                    "V routes disagree by {route_residual:.3e} at γ = {gamma}"
                )));
            }
            let min_eigenvalue = hermitian_eig(&direct.hermitian_part())?.values[0];
            let constructive_bound = c_gamma - constructive_k(c_alpha, c_beta, c_gamma);
            if min_eigenvalue < constructive_bound - 1e-9 {
                return Err(GenFunError::OracleMismatch(format!(
                    "e_l = {min_eigenvalue} below the constructive floor {constructive_bound}"
                )));
            }
            Ok(VMatrix {
                gamma,
                matrix: direct,
                hermitian_residual,
                route_residual,
                min_eigenvalue,
                c_alpha,
                c_beta,
                c_gamma,
                constructive_bound,
            })
        })
        .collect()
}

fn finite_v(
    l: &GenFunctional,
    triple: &SchurmannTriple,
    alpha: usize,
    beta: usize,
    gamma: usize,
    [ca, cg, cb]: [f64; 3],
) -> Result<(CMatrix, CMatrix), GenFunError> {
    let q = l.parent().finite().expect("finite parent");
    let irr = |a: usize| q.irreps().get(a).ok_or_else(|| GenFunError::Schema(format!("no irrep {a}")));
    let (ua, ug, ub) = (irr(alpha)?, irr(gamma)?, irr(beta)?);
    let (na, ng, nb) = (ua.dim, ug.dim, ub.dim);
    let n = na * ng * nb;
    let idx = |i: usize, j: usize, k: usize| (i * ng + j) * nb + k;
    let mut direct = CMatrix::zeros(n, n);
    let mut route = CMatrix::zeros(n, n);
    let cv = |x: &[C64]| triple.cocycle(x);
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    for i in 0..na {
        for p in 0..na {
            let a_star = q.star(ua.entry(i, p));
            let c_a = cv(ua.entry(i, p));
            for j in 0..ng {
                for r in 0..ng {
                    let g = ug.entry(j, r);
                    let ag = q.mul(&a_star, g);
                    let c_g = cv(g);
                    let c_g_star = cv(&q.star(g));
                    let rho_g = triple.rho_of(g).expect("finite triples carry ρ");
                    for k in 0..nb {
                        for s in 0..nb {
                            let b = ub.entry(k, s);
                            direct[(idx(i, j, k), idx(p, r, s))] = l.base().eval(&q.mul(&ag, b));
                            let c_b = cv(b);
                            let mut v = c(delta(i, p) * delta(j, r) * delta(k, s) * (ca + cg + cb), 0.0);
                            v -= inner(&c_g_star, &c_b) * delta(i, p);
                            v -= inner(&c_a, &c_g) * delta(k, s);
                            v -= inner(&c_a, &rho_g.matvec(&c_b));
                            route[(idx(i, j, k), idx(p, r, s))] = v;
                        }
                    }
                }
            }
        }
    }
    Ok((direct, route))
}

fn window_v(
    l: &GenFunctional,
    triple: &SchurmannTriple,
    alpha: usize,
    beta: usize,
    gamma: usize,
    [ca, cg, cb]: [f64; 3],
) -> Result<(CMatrix, CMatrix), GenFunError> {
    let w = l.parent().window().expect("window parent");
    let g_inv = w.inverse(gamma);
    let word = w.product_in_window(w.product_in_window(w.inverse(alpha), gamma)?, beta)?;
    let direct = CMatrix::new(1, 1, vec![l.base().at(word)]);
    let c_b = triple.cocycle_at(beta)?;
    let c_a = triple.cocycle_at(alpha)?;
    // ⟨c(α), ρ(γ)c(β)⟩ = ⟨ρ(γ⁻¹)c(α), c(β)⟩ = ⟨c(γ⁻¹α) − c(γ⁻¹), c(β)⟩.
    let c_ga: Vec<C64> = triple
        .cocycle_at(w.product_in_window(g_inv, alpha)?)?
        .iter()
        .zip(triple.cocycle_at(g_inv)?)
        .map(|(x, y)| x - y)
        .collect();
    let v = c(ca + cg + cb, 0.0)
        - inner(&triple.cocycle_at(g_inv)?, &c_b)
        - inner(&c_a, &triple.cocycle_at(gamma)?)
        - inner(&c_ga, &c_b);
    Ok((direct, CMatrix::new(1, 1, vec![v])))
}
