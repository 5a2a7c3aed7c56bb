use num_complex::Complex64 as C64;

use crate::{CMatrix, LinalgError};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: CMatrix,
}

impl Eigen {
    /// Rebuilds `V diag(f(λ)) V*`.
    pub fn map(&self, f: impl Fn(f64) -> C64) -> CMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let mut scaled = v.clone();
        for j in 0..n {
            let s = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= s;
            }
        }
        &scaled * &v.adjoint()
    }
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies
/// the real symmetric Jacobi rotation. The sweep budget is 100.
pub fn hermitian_eig(m: &CMatrix) -> Result<Eigen, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch(format!("eigenproblem on a {}×{} matrix", m.rows(), m.cols())));
    }
    if m.data().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let scale = m.frobenius_norm();
    let defect = m.hermitian_defect();
    if defect > 1e-9 * scale.max(1.0) {
        return Err(LinalgError::NotHermitian { residual: defect });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = CMatrix::identity(n);
    if n <= 1 {
        let values = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok(Eigen { values, vectors: v });
    }
    let tiny = 1e-15 * (n as f64) * scale.max(f64::MIN_POSITIVE);
    let mut sweeps = 0;
    loop {
        let off = off_diagonal(&a);
        if off <= tiny || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q, tiny / (n as f64));
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Eigen { values, vectors })
}

fn off_diagonal(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, skip: f64) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= skip || r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        -1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;
    // G = diag(1, conj(phase)) at (p, q) followed by the real rotation.
    let gpp = C64::new(cs, 0.0);
    let gpq = C64::new(sn, 0.0);
    let gqp = -phase.conj() * sn;
    let gqq = phase.conj() * cs;
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * gpp + vkq * gqp;
        v[(k, q)] = vkp * gpq + vkq * gqq;
    }
}

/// Smallest eigenvalue of a Hermitian matrix (`+∞` for the empty matrix).
pub fn min_eigenvalue(m: &CMatrix) -> Result<f64, LinalgError> {
    if m.rows() == 0 {
        return Ok(f64::INFINITY);
    }
    Ok(hermitian_eig(m)?.values[0])
}

/// True iff the Hermitian matrix `m` has minimum eigenvalue `≥ −tol`.
pub fn psd_check(m: &CMatrix, tol: f64) -> Result<bool, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch("psd_check on non-square".into()));
    }
    let defect = m.hermitian_defect();
    if defect > tol.max(1e-9 * m.frobenius_norm().max(1.0)) {
        return Err(LinalgError::NotHermitian { residual: defect });
    }
    Ok(min_eigenvalue(&m.hermitian_part())? >= -tol)
}

/// Square root of a positive semidefinite matrix; eigenvalues below zero are clipped.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix, LinalgError> {
    let e = hermitian_eig(m)?;
    Ok(e.map(|x| C64::new(x.max(0.0).sqrt(), 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        (&g + &g.adjoint()).scale_real(0.5)
    }

    fn reconstruction_residual(h: &CMatrix) -> f64 {
        let e = hermitian_eig(h).unwrap();
        e.map(|x| c(x, 0.0)).dist(h)
    }

    #[test]
    fn diagonal_sorted() {
        let e = hermitian_eig(&CMatrix::diag_real(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x() {
        let m = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = hermitian_eig(&m).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_six_by_six_reconstructs() {
        let h = random_hermitian(6, 7);
        assert!(reconstruction_residual(&h) <= 1e-8 * h.frobenius_norm());
    }

    #[test]
    fn eigenpairs_and_orthonormality() {
        let h = random_hermitian(12, 3);
        let e = hermitian_eig(&h).unwrap();
        for k in 0..12 {
            let v = e.vectors.column(k);
            let hv = h.matvec(&v);
            let res: f64 = hv.iter().zip(&v).map(|(a, b)| (a - b * e.values[k]).norm_sqr()).sum::<f64>().sqrt();
            assert!(res <= 1e-8 * h.frobenius_norm());
        }
        let vv = &e.vectors.adjoint() * &e.vectors;
        assert!(vv.dist(&CMatrix::identity(12)) < 1e-8);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn large_dimension_reconstructs() {
        let h = random_hermitian(256, 11);
        assert!(reconstruction_residual(&h) <= 1e-8 * h.frobenius_norm());
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&m), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn psd_examples() {
        assert!(psd_check(&CMatrix::identity(3), 1e-9).unwrap());
        assert!(!psd_check(&CMatrix::diag_real(&[1.0, -0.5]), 1e-9).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = CMatrix::from_fn(5, 3, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        assert!(psd_check(&(&g.adjoint() * &g), 1e-9).unwrap());
    }

    #[test]
    fn sqrt_squares_back() {
        let g = random_hermitian(5, 9);
        let p = &g * &g;
        let r = psd_sqrt(&p).unwrap();
        assert!((&r * &r).dist(&p) < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn reconstruction_holds(n in 1usize..24, seed in any::<u64>()) {
            let h = random_hermitian(n, seed);
            prop_assert!(reconstruction_residual(&h) <= 1e-8 * h.frobenius_norm().max(1e-300));
        }
    }
}
