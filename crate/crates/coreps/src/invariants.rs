//! Invariant vectors, almost-invariance defects, Kazhdan gaps, ergodicity
//! and weak mixing.

use numlin::{c, hermitian_eig, null_space, rank, vec_norm, CMatrix, C64};

use crate::corep::{Corep, CorepParent};
use crate::ops::{contragredient, tensor};
use crate::CorepError;

/// Agreement required between the two invariant-projection routes.
pub const PROJECTION_ORACLE_TOL: f64 = 1e-8;
/// Rank tolerance for projections and kernels.
pub const RANK_TOL: f64 = 1e-8;

/// Orthonormal basis of `{ξ : φ(x)ξ = ε̂(x)ξ for every stored x}`.
///
/// This is the brute-force joint kernel of `φ(e_g) − ε̂(e_g)I`; on a window
/// the stored elements are all group elements of the window.
pub fn invariant_kernel(u: &Corep) -> CMatrix {
    let n = u.dim();
    let eps = u.parent().counit_values();
    let stacked: Vec<CMatrix> = u.phis().iter().zip(&eps).map(|(m, &e)| m - &CMatrix::identity(n).scale(e)).collect();
    null_space(&CMatrix::vstack(&stacked), 1e-10)
}

/// `p^U = (h⊗id)(U)`, which is `φ(e_triv)` for the trivial block.
///
/// Checked to be an orthogonal projection and compared with the projection
/// onto [`invariant_kernel`].
pub fn invariant_projection(u: &Corep) -> Result<CMatrix, CorepError> {
    let p = u.parent().finite()?;
    let h = p.qg.haar_vector();
    let p_haar = u.slice(h)?;
    let p_triv = u.phi(p.dual.flat_index(p.dual.trivial_block(), 0, 0));
    let route = p_haar.dist(p_triv);
    if route > PROJECTION_ORACLE_TOL {
        return Err(CorepError::OracleMismatch(format!("(h⊗id)U differs from φ(e_triv) by {route:.3e}")));
    }
    let idem = (&p_haar * &p_haar).dist(&p_haar).max(p_haar.hermitian_defect());
    if idem > 1e-9 {
        return Err(CorepError::OracleMismatch(format!("(h⊗id)U is not an orthogonal projection ({idem:.3e})")));
    }
    let k = invariant_kernel(u);
    let oracle = &k * &k.adjoint();
    let diff = oracle.dist(&p_haar);
    if diff > PROJECTION_ORACLE_TOL {
        return Err(CorepError::OracleMismatch(format!(
            "(h⊗id)U differs from the joint kernel projection by {diff:.3e}"
        )));
    }
    Ok(p_haar)
}

/// Dimension of the invariant subspace.
pub fn invariant_rank(u: &Corep) -> Result<usize, CorepError> {
    match u.parent() {
        CorepParent::Finite(_) => Ok(rank(&invariant_projection(u)?, RANK_TOL)),
        CorepParent::Window(_) => Ok(invariant_kernel(u).cols()),
    }
}

/// Almost-invariance defect `max_{x∈F} ‖φ(x)ξ − ε̂(x)ξ‖`.
pub fn defect(u: &Corep, xi: &[C64], f: &[Vec<C64>]) -> Result<f64, CorepError> {
    check_elements(u, f)?;
    if xi.len() != u.dim() {
        return Err(CorepError::Schema(format!("vector of length {} for a {}-dimensional corep", xi.len(), u.dim())));
    }
    Ok(f.iter()
        .map(|x| {
            let e = u.counit_of(x);
            let v: Vec<C64> = u.phi_of(x).matvec(xi).iter().zip(xi).map(|(a, b)| a - e * b).collect();
            vec_norm(&v)
        })
        .fold(0.0, f64::max))
}

fn check_elements(u: &Corep, q: &[Vec<C64>]) -> Result<(), CorepError> {
    let d = u.parent().len();
    if let Some(x) = q.iter().find(|x| x.len() != d) {
        return Err(CorepError::Schema(format!("dual element of length {}, expected {d}", x.len())));
    }
    Ok(())
}

/// Kazhdan gap of `u` against `q`.
///
/// The square root of the smallest eigenvalue of
/// `Σ_{x∈q} (φ(x)−ε̂(x))*(φ(x)−ε̂(x))` on the orthogonal complement of the
/// invariant vectors, and `+∞` when that complement is zero. For a single
/// element this is `min_ξ ‖φ(x)ξ − ε̂(x)ξ‖`; in general it lies between that
/// min-max value and `√|q|` times it.
pub fn kazhdan_gap(u: &Corep, q: &[Vec<C64>]) -> Result<f64, CorepError> {
    if q.is_empty() {
        return Err(CorepError::EmptyQ);
    }
    check_elements(u, q)?;
    let n = u.dim();
    let inv = match u.parent() {
        CorepParent::Finite(_) => null_space(&invariant_projection(u)?, 1e-8),
        CorepParent::Window(_) => {
            let k = invariant_kernel(u);
            null_space(&(&k * &k.adjoint()), 1e-8)
        }
    };
    if inv.cols() == 0 {
        return Ok(f64::INFINITY);
    }
    let mut a = CMatrix::zeros(n, n);
    for x in q {
        let d = &u.phi_of(x) - &CMatrix::identity(n).scale(u.counit_of(x));
        a += &(&d.adjoint() * &d);
    }
    let restricted = &(&inv.adjoint() * &a) * &inv;
    let lam = hermitian_eig(&restricted.hermitian_part())?.values[0];
    Ok(lam.max(0.0).sqrt())
}

/// Ergodic: no non-zero invariant vectors.
pub fn is_ergodic(u: &Corep) -> Result<bool, CorepError> {
    Ok(invariant_rank(u)? == 0)
}

/// Weakly mixing: `U ⊤ U^c` is ergodic.
pub fn is_weakly_mixing(u: &Corep) -> Result<bool, CorepError> {
    is_ergodic(&tensor(u, &contragredient(u)?)?)
}

/// The element `Σ_k e^{2πik/n} e^k` of the dual of `dual-Z(n)`, acting as
/// the generator of `ℤ_n` in every corepresentation.
pub fn cyclic_generator(u: &Corep) -> Result<Vec<C64>, CorepError> {
    let p = u.parent().finite()?;
    let n = p.dual.blocks().len();
    if p.dual.blocks().iter().any(|&b| b != 1) || p.dual.trivial_block() != 0 {
        return Err(CorepError::Schema(format!("{} is not a cyclic group algebra", p.qg.name())));
    }
    Ok((0..n).map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect())
}

/// The unit of the dual, `Σ_α Σ_i e^α_ii` (or the identity element on a window).
pub fn dual_unit(parent: &CorepParent) -> Vec<C64> {
    match parent {
        CorepParent::Finite(p) => p.dual.unit(),
        CorepParent::Window(w) => {
            let mut v = vec![c(0.0, 0.0); w.len()];
            v[w.identity()] = c(1.0, 0.0);
            v
        }
    }
}

/// Every matrix unit of the dual (or every window element) as a dual element.
pub fn all_units(parent: &CorepParent) -> Vec<Vec<C64>> {
    let d = parent.len();
    (0..d)
        .map(|g| {
            let mut v = vec![c(0.0, 0.0); d];
            v[g] = c(1.0, 0.0);
            v
        })
        .collect()
}
