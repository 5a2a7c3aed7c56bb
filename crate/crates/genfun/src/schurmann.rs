//! Schürmann triples `(ρ, c, L)` realised by the conditional GNS construction.

use functionals::Parent;
use numlin::{c, hermitian_eig, inner, CMatrix, C64};
use qg_core::QgError;

use crate::generating::GenFunctional;
use crate::GenFunError;

/// Rank tolerance for the cocycle Gram matrix, relative to its scale.
pub const COCYCLE_RANK_TOL: f64 = 1e-10;
/// Tolerance for the cocycle rule.
pub const COCYCLE_TOL: f64 = 1e-8;
/// Tolerance for the defining identity.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Tolerance for the T-norm identities.
pub const T_NORM_TOL: f64 = 1e-8;

/// Cocycle Hilbert space `H`, representation `ρ` and cocycle `c` of a
/// generating functional.
///
/// For a finite parent `c` is realised on every basis element. On a window
/// it is realised on the half-radius ball, where the defining identity
/// only involves in-window quotients; `ρ` is then left implicit, acting by
/// `ρ(g)c(h) = c(gh) − c(g)`.
#[derive(Debug, Clone)]
pub struct SchurmannTriple {
    parent: Parent,
    /// Basis indices (finite) or window elements on which `c` is realised.
    pub domain: Vec<usize>,
    /// `⟨c(a), c(b)⟩` over the domain, from the defining identity.
    pub cocycle_gram: CMatrix,
    /// Columns `c(a)` for `a` in the domain; `X*X` reproduces the Gram.
    pub cocycle_vectors: CMatrix,
    /// `ρ(e_i)` on `H`, for a finite parent.
    pub rho: Option<Vec<CMatrix>>,
    /// Worst violation of `⟨c(a), c(bd)⟩ = ⟨c(a), ρ(b)c(d)⟩ + ε(d)⟨c(a), c(b)⟩`.
    pub cocycle_residual: f64,
    /// Worst violation of `L(a*b) = conj L(a) ε(b) + conj ε(a) L(b) − ⟨c(a), c(b)⟩`.
    pub identity_residual: f64,
    /// `max |Im ⟨c(a), c(b)⟩|` in the canonical basis.
    pub gram_imaginary_residual: f64,
    position: Vec<Option<usize>>,
}

impl SchurmannTriple {
    pub fn parent(&self) -> &Parent {
        &self.parent
    }

    /// Dimension of the cocycle space.
    pub fn dim(&self) -> usize {
        self.cocycle_vectors.rows()
    }

    /// `c(x)` for an element in the parent's basis coordinates (finite parent).
    pub fn cocycle(&self, x: &[C64]) -> Vec<C64> {
        self.cocycle_vectors.matvec(x)
    }

    /// `c(g)` for a window element in the realised ball, or a basis element.
    pub fn cocycle_at(&self, g: usize) -> Result<Vec<C64>, GenFunError> {
        let k = self.position.get(g).copied().flatten().ok_or_else(|| {
            GenFunError::Qg(QgError::WindowTruncation(format!("c({g}) is outside the realised half-radius ball")))
        })?;
        Ok(self.cocycle_vectors.column(k))
    }

    /// `ρ(x)` for an element in basis coordinates (finite parent).
    pub fn rho_of(&self, x: &[C64]) -> Option<CMatrix> {
        let rho = self.rho.as_ref()?;
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (r, &v) in rho.iter().zip(x) {
            if v.norm() > 0.0 {
                m.axpy(v, r);
            }
        }
        Some(m)
    }

    /// Worst violation of `ρ` being a unital *-representation (finite parent).
    pub fn representation_residual(&self) -> Option<f64> {
        let q = self.parent.finite()?;
        let rho = self.rho.as_ref()?;
        let d = q.dim();
        let mut worst = self.rho_of(q.unit())?.dist(&CMatrix::identity(self.dim()));
        for i in 0..d {
            let star = q.star(&q.basis_vector(i));
            worst = worst.max(self.rho_of(&star)?.dist(&rho[i].adjoint()));
            for j in 0..d {
                let prod = q.mul(&q.basis_vector(i), &q.basis_vector(j));
                worst = worst.max(self.rho_of(&prod)?.dist(&(&rho[i] * &rho[j])));
            }
        }
        Some(worst)
    }
}

/// Square-root factor `X` with `X*X = K` from the eigendecomposition, keeping
/// eigenvalues above the rank tolerance. Also returns `X⁺` with `X X⁺ = I`.
fn factor(k: &CMatrix) -> Result<(CMatrix, CMatrix), GenFunError> {
    let n = k.rows();
    if n == 0 {
        return Ok((CMatrix::zeros(0, 0), CMatrix::zeros(0, 0)));
    }
    let eig = hermitian_eig(&k.hermitian_part())?;
    let scale = eig.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if eig.values[0] < -IDENTITY_TOL * scale {
        return Err(GenFunError::GramNotPSD { min_eigenvalue: eig.values[0] });
    }
    let kept: Vec<usize> = (0..n).filter(|&i| eig.values[i] > COCYCLE_RANK_TOL * scale).collect();
    let v = CMatrix::from_fn(n, kept.len(), |a, j| eig.vectors[(a, kept[j])]);
    let sq: Vec<C64> = kept.iter().map(|&i| c(eig.values[i].sqrt(), 0.0)).collect();
    let isq: Vec<C64> = kept.iter().map(|&i| c(1.0 / eig.values[i].sqrt(), 0.0)).collect();
    Ok((&CMatrix::diag(&sq) * &v.adjoint(), &v * &CMatrix::diag(&isq)))
}

/// Conditional GNS construction of a validated generating functional.
pub fn schurmann_triple(l: &GenFunctional) -> Result<SchurmannTriple, GenFunError> {
    let base = l.base();
    match l.parent() {
        Parent::Finite(q) => {
            let d = q.dim();
            let eps = q.counit_vector();
            let vals = base.coeffs();
            let g = q.gram(vals);
            let k = CMatrix::from_fn(d, d, |a, b| vals[a].conj() * eps[b] + eps[a].conj() * vals[b] - g[(a, b)]);
            let (x, x_plus) = factor(&k)?;
            let r = x.rows();
            let realised = &x.adjoint() * &x;
            let identity_residual = (&k - &realised).max_abs();
            let eps_row = CMatrix::new(1, d, eps.to_vec());
            let mut rho = Vec::with_capacity(d);
            let mut cocycle_residual: f64 = 0.0;
            for i in 0..d {
                let m_i = q.left_mult_matrix(&q.basis_vector(i));
                let x_i = CMatrix::new(r, 1, x.column(i));
                // Columns c(e_i e_j) − c(e_i)ε(e_j).
                let target = &(&x * &m_i) - &(&x_i * &eps_row);
                let rho_i = &target * &x_plus;
                let defect = &(&rho_i * &x) - &target;
                cocycle_residual = cocycle_residual.max((&x.adjoint() * &defect).max_abs());
                rho.push(rho_i);
            }
            let gram_imaginary_residual = k.data().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            let triple = SchurmannTriple {
                parent: l.parent().clone(),
                domain: (0..d).collect(),
                cocycle_gram: k,
                cocycle_vectors: x,
                rho: Some(rho),
                cocycle_residual,
                identity_residual,
                gram_imaginary_residual,
                position: (0..d).map(Some).collect(),
            };
            finish(l, triple)
        }
        Parent::Window(w) => {
            let half = w.radius() / 2;
            if half < 1 {
                return Err(QgError::WindowTruncation("window too small for a half-radius ball".into()).into());
            }
            let ball = w.ball(half);
            let n = ball.len();
            let mut position = vec![None; w.len()];
            for (k, &g) in ball.iter().enumerate() {
                position[g] = Some(k);
            }
            let lv = |g: usize| base.at(g);
            let mut k = CMatrix::zeros(n, n);
            for (a, &ga) in ball.iter().enumerate() {
                for (b, &gb) in ball.iter().enumerate() {
                    let q = lv(w.quotient_in_window(ga, gb)?);
                    k[(a, b)] = lv(ga).conj() + lv(gb) - q;
                }
            }
            let (x, _) = factor(&k)?;
            let realised = &x.adjoint() * &x;
            let identity_residual = (&k - &realised).max_abs();
            // ⟨c(a), c(bd)⟩ − ⟨c(a), c(b)⟩ = ⟨c(b⁻¹a) − c(b⁻¹), c(d)⟩, using unitarity of ρ(b).
            let ip = |a: usize, b: usize| realised[(a, b)];
            let mut cocycle_residual: f64 = 0.0;
            for (ia, &a) in ball.iter().enumerate() {
                for (ib, &b) in ball.iter().enumerate() {
                    let b_inv = w.inverse(b);
                    let (Some(ibi), Some(ba)) = (position[b_inv], w.product(b_inv, a).and_then(|g| position[g])) else {
                        continue;
                    };
                    for (id, &dd) in ball.iter().enumerate() {
                        let Some(ibd) = w.product(b, dd).and_then(|g| position[g]) else {
                            continue;
                        };
                        let lhs = ip(ia, ibd) - ip(ia, ib);
                        let rhs = ip(ba, id) - ip(ibi, id);
                        cocycle_residual = cocycle_residual.max((lhs - rhs).norm());
                    }
                }
            }
            let gram_imaginary_residual = k.data().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            let triple = SchurmannTriple {
                parent: l.parent().clone(),
                domain: ball,
                cocycle_gram: k,
                cocycle_vectors: x,
                rho: None,
                cocycle_residual,
                identity_residual,
                gram_imaginary_residual,
                position,
            };
            finish(l, triple)
        }
    }
}

fn finish(l: &GenFunctional, t: SchurmannTriple) -> Result<SchurmannTriple, GenFunError> {
    if t.identity_residual > IDENTITY_TOL {
        return Err(GenFunError::OracleMismatch(format!(
            "realised cocycle misses the defining identity by {:.3e}",
            t.identity_residual
        )));
    }
    if t.cocycle_residual > COCYCLE_TOL {
        return Err(GenFunError::OracleMismatch(format!("cocycle rule violated by {:.3e}", t.cocycle_residual)));
    }
    if l.s_invariant && t.gram_imaginary_residual > COCYCLE_TOL {
        return Err(GenFunError::OracleMismatch(format!(
            "S-invariant L with a non-real cocycle Gram ({:.3e})",
            t.gram_imaginary_residual
        )));
    }
    Ok(t)
}

/// Operators `T_γ`, `T̃_γ : ℂ^n → H ⊗ ℂ^n` with `T(e_j) = Σ_a c(u_ja) ⊗ e_a`
/// and `T̃(e_j) = Σ_a c(u_aj*) ⊗ e_a`.
pub fn t_operators(triple: &SchurmannTriple, gamma: usize) -> Result<(CMatrix, CMatrix), GenFunError> {
    let r = triple.dim();
    match triple.parent() {
        Parent::Finite(q) => {
            let irrep = q.irreps().get(gamma).ok_or_else(|| GenFunError::Schema(format!("no irrep {gamma}")))?;
            let n = irrep.dim;
            let mut t = CMatrix::zeros(r * n, n);
            let mut tt = CMatrix::zeros(r * n, n);
            for j in 0..n {
                for a in 0..n {
                    let cv = triple.cocycle(irrep.entry(j, a));
                    let cs = triple.cocycle(&q.star(irrep.entry(a, j)));
                    for h in 0..r {
                        t[(h * n + a, j)] = cv[h];
                        tt[(h * n + a, j)] = cs[h];
                    }
                }
            }
            Ok((t, tt))
        }
        Parent::Window(w) => {
            let cv = triple.cocycle_at(gamma)?;
            let cs = triple.cocycle_at(w.inverse(gamma))?;
            Ok((CMatrix::new(r, 1, cv), CMatrix::new(r, 1, cs)))
        }
    }
}

/// `max(‖T*T − 2c_γ I‖, ‖T̃*T̃ − 2c_γ I‖)`; the contract is `≤ 1e−8`.
pub fn check_t_norms(l: &GenFunctional, triple: &SchurmannTriple, gamma: usize) -> Result<f64, GenFunError> {
    l.require_central()?;
    l.require_s_invariant()?;
    if let Parent::Finite(q) = l.parent() {
        if !q.is_kac() {
            return Err(GenFunError::NotKac);
        }
    }
    let c_gamma = l.c(gamma)?;
    let (t, tt) = t_operators(triple, gamma)?;
    let n = t.cols();
    let target = CMatrix::identity(n).scale(c(2.0 * c_gamma, 0.0));
    let r1 = (&(&t.adjoint() * &t) - &target).op_norm();
    let r2 = (&(&tt.adjoint() * &tt) - &target).op_norm();
    let residual = r1.max(r2);
    if residual > T_NORM_TOL {
        return Err(GenFunError::OracleMismatch(format!("T-norm identity violated by {residual:.3e}")));
    }
    Ok(residual)
}

/// `⟨c(x), c(y)⟩` for elements in basis coordinates (finite parent).
pub fn cocycle_inner(triple: &SchurmannTriple, x: &[C64], y: &[C64]) -> C64 {
    inner(&triple.cocycle(x), &triple.cocycle(y))
}
