//! Preservation of the positive cone by slices of the implementation.
//!
//! `M_k ⊗ N` acts standardly on `M_k ⊗ L²(N)`, whose positive cone is the
//! closure of sums of `(ζ_i Jζ_j)_{ij} = (ζ_i ζ_j*)_{ij}`. In the
//! block-diagonal realisation these are exactly the positive semidefinite
//! block matrices, so membership is decided by the infimum of
//! `⟨(η_i η_j*), Y⟩` over generators, which is the smallest eigenvalue.

use numlin::{hermitian_eig, CMatrix, C64};
use qg_core::SeededRng;
use serde::Serialize;

use crate::block::BlockAlgebra;
use crate::implement::Implementation;
use crate::ActionError;

/// Tolerance of the dual cone test, relative to the size of the image.
pub const CONE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct ConeReport {
    pub preserved: bool,
    /// Smallest eigenvalue of an image over the test family.
    pub worst_min_eigenvalue: f64,
    /// Largest Hermitian defect of an image.
    pub worst_hermitian_defect: f64,
    pub tests: usize,
    pub tolerance: f64,
}

/// `u_ij = (ω_{ξ_j,ξ_i}⊗id)(U)` with `ω_{ξ,η}(a) = h(ξ* a η)` on `L²(G)`,
/// vectors given in the algebra basis.
pub fn slice_matrix(imp: &Implementation, xis: &[Vec<C64>]) -> Result<Vec<Vec<CMatrix>>, ActionError> {
    let q = &imp.action().parent().qg;
    let d = q.dim();
    xis.iter()
        .map(|xi_i| {
            xis.iter()
                .map(|xi_j| {
                    let xj_star = q.star(xi_j);
                    let omega: Vec<C64> =
                        (0..d).map(|k| q.haar(&q.mul(&q.mul(&xj_star, &q.basis_vector(k)), xi_i))).collect();
                    Ok(imp.corep().slice(&omega)?)
                })
                .collect()
        })
        .collect()
}

/// The block matrix of a grid `(ζ_ij)` of vectors in `L²(N)`.
pub fn grid_matrix(alg: &BlockAlgebra, grid: &[Vec<Vec<C64>>]) -> CMatrix {
    let k = grid.len();
    let n = alg.size();
    let mut big = CMatrix::zeros(k * n, k * n);
    for (i, row) in grid.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            big.set_block(i * n, j * n, &alg.to_matrix(z));
        }
    }
    big
}

/// Seeded cone elements `Σ_r (ζ^r_i ζ^r_j*)` for `k×k` grids, together
/// with the generators built from a single matrix unit.
pub fn cone_test_family(alg: &BlockAlgebra, k: usize, seed: u64, random: usize) -> Vec<Vec<Vec<Vec<C64>>>> {
    let m = alg.dim();
    let generator = |zetas: &[Vec<Vec<C64>>]| -> Vec<Vec<Vec<C64>>> {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let mut s = vec![C64::new(0.0, 0.0); m];
                        for z in zetas {
                            let p = alg.mul(&z[i], &alg.star(&z[j]));
                            for (a, b) in s.iter_mut().zip(p) {
                                *a += b;
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect()
    };
    let mut out: Vec<Vec<Vec<Vec<C64>>>> =
        (0..m).map(|f| generator(&[(0..k).map(|_| alg.basis_vector(f)).collect()])).collect();
    let mut rng = SeededRng::new(seed);
    for t in 0..random {
        let terms = 1 + t % 3;
        let zetas: Vec<Vec<Vec<C64>>> = (0..terms).map(|_| (0..k).map(|_| rng.complex_vec(m)).collect()).collect();
        out.push(generator(&zetas));
    }
    out
}

/// Applies `u` entrywise, `(u_ij ζ_ij)`, to every member of the family and
/// tests cone membership of the images.
pub fn preserves_cone(
    alg: &BlockAlgebra,
    u: &[Vec<CMatrix>],
    family: &[Vec<Vec<Vec<C64>>>],
) -> Result<ConeReport, ActionError> {
    let mut worst_min_eigenvalue = f64::INFINITY;
    let mut worst_hermitian_defect: f64 = 0.0;
    let mut preserved = true;
    for z in family {
        let image: Vec<Vec<Vec<C64>>> = z
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, zij)| u[i][j].matvec(zij)).collect())
            .collect();
        let big = grid_matrix(alg, &image);
        let scale = big.max_abs().max(1.0);
        let defect = big.hermitian_defect();
        let min = hermitian_eig(&big.hermitian_part())?.values[0];
        worst_hermitian_defect = worst_hermitian_defect.max(defect);
        worst_min_eigenvalue = worst_min_eigenvalue.min(min);
        if defect > CONE_TOL * scale || min < -CONE_TOL * scale {
            preserved = false;
        }
    }
    Ok(ConeReport { preserved, worst_min_eigenvalue, worst_hermitian_defect, tests: family.len(), tolerance: CONE_TOL })
}

/// Checks that `((ω_{ξ_j,ξ_i}⊗id)(U))_{ij}` preserves the positive cone.
pub fn cone_preservation_check(imp: &Implementation, xis: &[Vec<C64>]) -> Result<ConeReport, ActionError> {
    imp.action().parent().qg.require_kac().map_err(|_| ActionError::NotKac)?;
    let u = slice_matrix(imp, xis)?;
    let alg = imp.action().algebra();
    let family = cone_test_family(alg, xis.len(), 11, 24);
    preserves_cone(alg, &u, &family)
}
