//! The unitary implementation on `L²(N, θ)`.
//!
//! `L²(N, θ)` is realised as the block-diagonal matrices with the
//! Hilbert–Schmidt inner product and `Λ(x) = xρ^{1/2}`, so that
//! `⟨Λ(x), Λ(y)⟩ = θ(x*y)`, `N` acts by left multiplication and
//! `J_θ ξ = ξ*`. The implementation is defined by
//! `(ω⊗id)(U*)Λ(x) = Λ((ω⊗id)α(x))`, that is `(U*)_k Λ(x) = Λ(α_k(x))`.

use coreps::{check_condition_R, Corep, CorepParent};
use numlin::{c, hermitian_eig, CMatrix, C64};

use crate::action::Action;
use crate::ActionError;

/// Tolerance on the implementation identity `α(x) = U*(1⊗x)U`.
pub const IMPLEMENTATION_TOL: f64 = 1e-9;

/// An action together with its unitary implementation.
#[derive(Debug, Clone)]
pub struct Implementation {
    action: Action,
    sqrt_rho: CMatrix,
    inv_sqrt_rho: CMatrix,
    corep: Corep,
    /// `J_θ` as the matrix `M` of `ξ ↦ M conj(ξ)`.
    j: CMatrix,
    /// `max_{x,m} ‖(U*(1⊗π(x))U)_m − π(α_m(x))‖` over matrix units.
    pub implementation_residual: f64,
    /// `‖U*U − 1‖`, `‖UU* − 1‖`.
    pub unitarity_residual: f64,
    /// Condition ℛ with respect to `J_θ`.
    pub condition_r: bool,
}

impl Implementation {
    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn corep(&self) -> &Corep {
        &self.corep
    }

    pub fn j_matrix(&self) -> &CMatrix {
        &self.j
    }

    /// Dimension of `L²(N, θ)`.
    pub fn dim(&self) -> usize {
        self.action.algebra().dim()
    }

    /// `Λ_θ(x) = xρ^{1/2}` in flat coordinates.
    pub fn lambda(&self, x: &[C64]) -> Vec<C64> {
        let alg = self.action.algebra();
        alg.from_matrix(&(&alg.to_matrix(x) * &self.sqrt_rho))
    }

    /// Inverse of [`Self::lambda`].
    pub fn lambda_inverse(&self, xi: &[C64]) -> Vec<C64> {
        let alg = self.action.algebra();
        alg.from_matrix(&(&alg.to_matrix(xi) * &self.inv_sqrt_rho))
    }

    /// Left multiplication `π(x)` on `L²(N, θ)`.
    pub fn pi(&self, x: &[C64]) -> CMatrix {
        let alg = self.action.algebra();
        let xm = alg.to_matrix(x);
        let cols: Vec<Vec<C64>> =
            (0..alg.dim()).map(|f| alg.from_matrix(&(&xm * &alg.to_matrix(&alg.basis_vector(f))))).collect();
        CMatrix::from_columns(alg.dim(), &cols)
    }

    /// Right multiplication `ξ ↦ ξy`, an element of `N'`.
    pub fn right(&self, y: &[C64]) -> CMatrix {
        let alg = self.action.algebra();
        let ym = alg.to_matrix(y);
        let cols: Vec<Vec<C64>> =
            (0..alg.dim()).map(|f| alg.from_matrix(&(&alg.to_matrix(&alg.basis_vector(f)) * &ym))).collect();
        CMatrix::from_columns(alg.dim(), &cols)
    }
}

/// Components `W_k = (U*)_k` with `W_k Λ(x) = Λ(α_k(x))`.
fn u_star_components(action: &Action, sqrt_rho: &CMatrix, inv_sqrt_rho: &CMatrix) -> Vec<CMatrix> {
    let alg = action.algebra();
    let m = alg.dim();
    (0..action.parent().qg.dim())
        .map(|k| {
            let cols: Vec<Vec<C64>> = (0..m)
                .map(|f| {
                    let x = alg.from_matrix(&(&alg.to_matrix(&alg.basis_vector(f)) * inv_sqrt_rho));
                    alg.from_matrix(&(&alg.to_matrix(&action.component(k, &x)) * sqrt_rho))
                })
                .collect();
            CMatrix::from_columns(m, &cols)
        })
        .collect()
}

/// Builds the unitary implementation of an action with a faithful invariant state.
pub fn implement(action: &Action) -> Result<Implementation, ActionError> {
    let rho = action.theta().ok_or(ActionError::NoInvariantState { min_eigenvalue: f64::NAN })?;
    let eig = hermitian_eig(&rho.hermitian_part())?;
    let sqrt_rho = eig.map(|x| c(x.sqrt(), 0.0));
    let inv_sqrt_rho = eig.map(|x| c(1.0 / x.sqrt(), 0.0));
    let parent = action.parent().clone();
    let q = &parent.qg;
    let d = q.dim();
    let alg = action.algebra();
    let m = alg.dim();
    let ws = u_star_components(action, &sqrt_rho, &inv_sqrt_rho);
    // U = Σ_i e_i ⊗ Σ_k Star[i][k] W_k†.
    let star = q.star_matrix();
    let us: Vec<CMatrix> = (0..d)
        .map(|i| {
            let mut u = CMatrix::zeros(m, m);
            for (k, w) in ws.iter().enumerate() {
                let s = star[(i, k)];
                if s.norm() > 0.0 {
                    u.axpy(s, &w.adjoint());
                }
            }
            u
        })
        .collect();
    let corep = Corep::from_u_components(CorepParent::Finite(parent.clone()), m, &us)?;
    let unitarity_residual = corep.residuals()?.unitarity;
    let mut imp = Implementation {
        action: action.clone(),
        sqrt_rho,
        inv_sqrt_rho,
        corep,
        j: CMatrix::from_fn(m, m, |r, col| if r == alg.transpose_index(col) { c(1.0, 0.0) } else { c(0.0, 0.0) }),
        implementation_residual: 0.0,
        unitarity_residual,
        condition_r: false,
    };
    let mut worst: f64 = 0.0;
    for f in 0..m {
        let x = alg.basis_vector(f);
        let pix = imp.pi(&x);
        let mut lhs = vec![CMatrix::zeros(m, m); d];
        for (k, w) in ws.iter().enumerate() {
            let wx = w * &pix;
            for (i, u) in us.iter().enumerate() {
                let terms = q.mult_terms(k, i);
                if terms.is_empty() {
                    continue;
                }
                let p = &wx * u;
                for &(t, coef) in terms {
                    lhs[t].axpy(coef, &p);
                }
            }
        }
        for (t, l) in lhs.iter().enumerate() {
            worst = worst.max(l.dist(&imp.pi(&action.component(t, &x))));
        }
    }
    imp.implementation_residual = worst;
    if !(worst <= IMPLEMENTATION_TOL) {
        return Err(ActionError::OracleMismatch(format!("α(x) ≠ U*(1⊗x)U (residual {worst:.3e})")));
    }
    imp.condition_r = check_condition_R(&imp.corep, &imp.j)?;
    Ok(imp)
}
