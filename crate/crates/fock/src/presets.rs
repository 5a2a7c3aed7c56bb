//! Corepresentations of preset quantum groups together with an involution
//! `J` on their space, and helpers for the cyclic examples.

use std::f64::consts::PI;

use coreps::{Corep, CorepParent, FiniteParent};
use numlin::{c, CMatrix, C64};
use qg_core::presets;

use crate::lift::{compatibility_residual, COMPAT_TOL};
use crate::space::{Involution, TruncatedFock};
use crate::FockError;

/// A corepresentation with a candidate `J` (`Q = I`).
#[derive(Debug, Clone)]
pub struct FockCandidate {
    pub name: String,
    pub corep: Corep,
    pub j: CMatrix,
}

impl FockCandidate {
    pub fn fock(&self, depth: usize) -> Result<TruncatedFock, FockError> {
        let k = self.corep.dim();
        TruncatedFock::with_involution(k, depth, Involution::new(self.j.clone(), CMatrix::identity(k))?)
    }

    /// Whether `U` is compatible with `T = J`.
    pub fn is_compatible(&self) -> Result<bool, FockError> {
        Ok(compatibility_residual(&self.fock(0)?, &self.corep)? <= COMPAT_TOL)
    }
}

fn parent(q: Result<qg_core::FiniteQg, qg_core::QgError>) -> Result<CorepParent, FockError> {
    Ok(CorepParent::Finite(FiniteParent::new(q.map_err(coreps::CorepError::from)?)?))
}

/// `⊕_a χ_a` over all one-dimensional irreps, with `J e_a = e_b` where
/// `u_b = u_a*`. Fails if some irrep is not one-dimensional.
pub fn character_sum(parent: &CorepParent) -> Result<(Corep, CMatrix), FockError> {
    let p = parent.finite()?;
    let n = p.qg.irreps().len();
    let chars: Vec<Corep> = (0..n).map(|a| Corep::irrep(parent.clone(), a)).collect::<Result<_, _>>()?;
    if chars.iter().any(|x| x.dim() != 1) {
        return Err(FockError::Schema("character sums need one-dimensional irreps".into()));
    }
    let comps: Vec<Vec<C64>> = chars
        .iter()
        .map(|x| x.u_components().map(|v| v.iter().map(|m| m[(0, 0)]).collect()))
        .collect::<Result<_, _>>()?;
    let stars: Vec<Vec<C64>> = chars
        .iter()
        .map(|x| x.u_star_components().map(|v| v.iter().map(|m| m[(0, 0)]).collect()))
        .collect::<Result<_, _>>()?;
    let mut j = CMatrix::zeros(n, n);
    for a in 0..n {
        let b = (0..n)
            .find(|&b| numlin::max_abs_diff(&comps[b], &stars[a]) < 1e-12)
            .ok_or_else(|| FockError::OracleMismatch(format!("no irrep conjugate to character {a}")))?;
        j[(b, a)] = c(1.0, 0.0);
    }
    Ok((Corep::direct_sum(&chars)?, j))
}

/// Solves the linear system `W_m M = M conj(B_m)` for the matrix of a
/// compatible `J` (see [`compatibility_residual`]). For a one-dimensional
/// solution space `M conj(M) = λ I` with `λ` real; `λ > 0` gives a real
/// structure after rescaling, `λ < 0` a quaternionic one, reported as `None`.
pub fn real_structure(u: &Corep) -> Result<Option<CMatrix>, FockError> {
    let p = u.parent().finite()?;
    let k = u.dim();
    let ws = u.u_star_components()?;
    let star = p.qg.star_matrix();
    // Unknown M in column-major coordinates M[(r, s)] ↦ r + s·k.
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (m, wm) in ws.iter().enumerate() {
        let mut b = CMatrix::zeros(k, k);
        for (i, wi) in ws.iter().enumerate() {
            if star[(m, i)].norm() > 0.0 {
                b.axpy(star[(m, i)].conj(), wi);
            }
        }
        let bc = b.conj();
        for r in 0..k {
            for s in 0..k {
                // (W M − M conj B)[r][s] = Σ_x W[r][x] M[x][s] − Σ_x M[r][x] conj B[x][s].
                let mut row = vec![c(0.0, 0.0); k * k];
                for x in 0..k {
                    row[x + s * k] += wm[(r, x)];
                    row[r + x * k] -= bc[(x, s)];
                }
                rows.push(row);
            }
        }
    }
    let sys = CMatrix::from_fn(rows.len(), k * k, |i, j| rows[i][j]);
    let kernel = numlin::null_space(&sys, 1e-10);
    if kernel.cols() != 1 {
        return Ok(None);
    }
    let m0 = CMatrix::from_fn(k, k, |r, s| kernel[(r + s * k, 0)]);
    let lambda = (&m0 * &m0.conj())[(0, 0)];
    if lambda.re <= 1e-12 || lambda.im.abs() > 1e-9 {
        return Ok(None);
    }
    Ok(Some(m0.scale_real(1.0 / lambda.re.sqrt())))
}

/// Candidate corepresentations over the presets.
pub fn fock_candidates() -> Result<Vec<FockCandidate>, FockError> {
    let mut out = Vec::new();
    let z2 = parent(presets::dual_z(2))?;
    out.push(FockCandidate {
        name: "trivial-dual-z2".into(),
        corep: Corep::trivial(z2.clone(), 1),
        j: CMatrix::identity(1),
    });
    out.push(FockCandidate { name: "sign-dual-z2".into(), corep: Corep::irrep(z2, 1)?, j: CMatrix::identity(1) });
    for n in [3usize, 4] {
        let (corep, j) = character_sum(&parent(presets::dual_z(n))?)?;
        out.push(FockCandidate { name: format!("characters-dual-z{n}"), corep, j });
    }
    let (corep, j) = character_sum(&parent(presets::dual_s3())?)?;
    out.push(FockCandidate { name: "characters-dual-s3".into(), corep, j });
    let z4 = parent(presets::dual_z(4))?;
    out.push(FockCandidate { name: "generator-dual-z4".into(), corep: Corep::irrep(z4, 1)?, j: CMatrix::identity(1) });
    let s3 = parent(presets::fun_s3())?;
    out.push(FockCandidate { name: "standard-fun-s3".into(), corep: Corep::irrep(s3, 2)?, j: CMatrix::identity(2) });
    let kp = parent(presets::kac_paljutkin())?;
    let kp2 = Corep::irrep(kp, 4)?;
    out.push(FockCandidate { name: "two-dim-kac-paljutkin".into(), corep: kp2.clone(), j: CMatrix::identity(2) });
    if let Some(j) = real_structure(&kp2)? {
        out.push(FockCandidate { name: "two-dim-kac-paljutkin-solved".into(), corep: kp2, j });
    }
    Ok(out)
}

/// The candidates passing the compatibility check.
pub fn compatible_presets() -> Result<Vec<FockCandidate>, FockError> {
    let mut out = Vec::new();
    for cand in fock_candidates()? {
        if cand.is_compatible()? {
            out.push(cand);
        }
    }
    Ok(out)
}

/// The state `λ_g ↦ e^{2πi gk/n}` on the group algebra of `ℤ_n`.
pub fn evaluation_state(n: usize, k: usize) -> Vec<C64> {
    (0..n).map(|g| C64::from_polar(1.0, 2.0 * PI * ((g * k) % n) as f64 / n as f64)).collect()
}

/// The `J`-real unit vector `(e_k + e_{−k})/√2` (or `e_k` if `k = −k`) in
/// the character sum of `ℤ_n`, whose defect against
/// [`evaluation_state`]`(n, 1)` is `2 sin(πk/n)`.
pub fn symmetric_vector(n: usize, k: usize) -> Vec<C64> {
    let mut v = vec![c(0.0, 0.0); n];
    let (a, b) = (k % n, (n - k % n) % n);
    if a == b {
        v[a] = c(1.0, 0.0);
    } else {
        let r = 0.5f64.sqrt();
        v[a] = c(r, 0.0);
        v[b] = c(r, 0.0);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compatibility_of_candidates() {
        let all = fock_candidates().unwrap();
        let ok: Vec<String> = compatible_presets().unwrap().into_iter().map(|c| c.name).collect();
        eprintln!("{ok:?} of {:?}", all.iter().map(|c| &c.name).collect::<Vec<_>>());
        assert!(ok.contains(&"sign-dual-z2".to_string()));
        assert!(ok.contains(&"characters-dual-z4".to_string()));
        assert!(!ok.contains(&"generator-dual-z4".to_string()));
        assert!(all.len() > ok.len());
    }
}
