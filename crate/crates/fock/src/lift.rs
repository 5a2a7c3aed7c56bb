//! The lifted corepresentation `F(U) = ⊕_n U^{⊤̄n}` on the truncated Fock space.

use coreps::{tensor_bar, Corep, CorepParent};
use numlin::{kron, CMatrix};

use crate::space::TruncatedFock;
use crate::FockError;

/// Tolerance of the compatibility `(ω⊗ι)(U*)T = T(ω̄⊗ι)(U*)`.
pub const COMPAT_TOL: f64 = 1e-9;
/// Tolerance of the tensor-power oracle.
pub const LIFT_TOL: f64 = 1e-9;

/// Worst residual of `(ω⊗ι)(U*)T = T(ω̄⊗ι)(U*)` over the coefficient
/// functionals `ω_m(e_i) = δ_mi`, which span the dual of `A`.
///
/// With `U* = Σ_i e_i⊗W_i` and `e_i* = Σ_k Star[k][i] e_k`, the right slice
/// is `B_m = Σ_i conj(Star[m][i]) W_i`, and for `Tζ = T conj(ζ)` the identity
/// reads `W_m T = T conj(B_m)`.
pub fn compatibility_residual(f: &TruncatedFock, u: &Corep) -> Result<f64, FockError> {
    let p = u.parent().finite()?;
    if u.dim() != f.base_dim() {
        return Err(FockError::Schema(format!("corep on dimension {}, K has {}", u.dim(), f.base_dim())));
    }
    let ws = u.u_star_components()?;
    let star = p.qg.star_matrix();
    let t = f.involution().t_matrix();
    let mut worst: f64 = 0.0;
    for (m, wm) in ws.iter().enumerate() {
        let mut b = CMatrix::zeros(u.dim(), u.dim());
        for (i, wi) in ws.iter().enumerate() {
            let s = star[(m, i)];
            if s.norm() > 0.0 {
                b.axpy(s.conj(), wi);
            }
        }
        worst = worst.max((wm * t).dist(&(t * &b.conj())));
    }
    Ok(worst)
}

/// `F(U)` with its degree blocks.
#[derive(Debug, Clone)]
pub struct LiftedRep {
    /// `U^{⊤̄n}` for `n = 0..=N`, the degree-0 block trivial.
    pub blocks: Vec<Corep>,
    pub corep: Corep,
    pub compatibility_residual: f64,
    /// Distance between the blocks and the independent leg-product powers.
    pub power_residual: f64,
}

/// `U^{⊤̄n} = U_{1(n+1)}⋯U_{13}U_{12}` by appending legs:
/// `U^{⊤̄n} = Σ_{a,c} e_a e_c ⊗ X_c ⊗ U_a` for `U^{⊤̄(n−1)} = Σ_c e_c⊗X_c`.
pub fn tensor_power_components(u: &Corep, n: usize) -> Result<Vec<CMatrix>, FockError> {
    let p = u.parent().finite()?;
    let d = p.qg.dim();
    let us = u.u_components()?;
    let mut x: Vec<CMatrix> = p.qg.unit().iter().map(|&e| CMatrix::identity(1).scale(e)).collect();
    for _ in 0..n {
        let size = x[0].rows() * u.dim();
        let mut next = vec![CMatrix::zeros(size, size); d];
        for (a, ua) in us.iter().enumerate() {
            if ua.max_abs() == 0.0 {
                continue;
            }
            for (cix, xc) in x.iter().enumerate() {
                let terms = p.qg.mult_terms(a, cix);
                if terms.is_empty() || xc.max_abs() == 0.0 {
                    continue;
                }
                let k = kron(xc, ua);
                for &(t, w) in terms {
                    next[t].axpy(w, &k);
                }
            }
        }
        x = next;
    }
    Ok(x)
}

/// Builds `F(U)` after checking compatibility of `U` with `T`. Degree
/// blocks are built by prepending legs, `U^{⊤̄n} = U ⊤̄ U^{⊤̄(n−1)}`, matching
/// `ℓ(ζ)ξ = ζ⊗ξ`, and compared with [`tensor_power_components`].
pub fn lift_rep(f: &TruncatedFock, u: &Corep) -> Result<LiftedRep, FockError> {
    if !matches!(u.parent(), CorepParent::Finite(_)) {
        return Err(FockError::Schema("F(U) needs a finite parent".into()));
    }
    let compatibility_residual = compatibility_residual(f, u)?;
    if !(compatibility_residual <= COMPAT_TOL) {
        return Err(FockError::CompatibilityFailed { residual: compatibility_residual });
    }
    let mut blocks = vec![Corep::trivial(u.parent().clone(), 1)];
    for n in 1..=f.depth() {
        let next = if n == 1 { u.clone() } else { tensor_bar(u, &blocks[n - 1])? };
        blocks.push(next);
    }
    let mut power_residual: f64 = 0.0;
    for (n, b) in blocks.iter().enumerate() {
        let oracle = tensor_power_components(u, n)?;
        for (x, y) in b.u_components()?.iter().zip(&oracle) {
            power_residual = power_residual.max(x.dist(y));
        }
    }
    if !(power_residual <= LIFT_TOL) {
        return Err(FockError::OracleMismatch(format!("U^⊤̄n differs from the leg product by {power_residual:.3e}")));
    }
    let corep = Corep::direct_sum(&blocks)?;
    corep.validate()?;
    Ok(LiftedRep { blocks, corep, compatibility_residual, power_residual })
}
