use num_complex::Complex64 as C64;

use crate::CMatrix;

const MAX_SWEEPS: usize = 100;

/// Singular values and right singular vectors from one-sided Jacobi.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Singular values, one per column of the input, unsorted.
    pub singular_values: Vec<f64>,
    /// Unitary matrix whose columns are the right singular vectors.
    pub v: CMatrix,
}

/// One-sided (Hestenes) Jacobi SVD of an `m×n` matrix.
///
/// Columns of `a·V` are orthogonalised pairwise until all pairs are
/// orthogonal to working precision; the column norms are the singular values.
pub fn svd_jacobi(a: &CMatrix) -> Svd {
    let (m, n) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v = CMatrix::identity(n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = C64::new(0.0, 0.0);
                    for i in 0..m {
                        alpha += cp[i].norm_sqr();
                        beta += cq[i].norm_sqr();
                        gamma += cp[i].conj() * cq[i];
                    }
                    (alpha, beta, gamma)
                };
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // Column rotation G with G_pp = c, G_pq = s, G_qp = −conj(phase) s, G_qq = conj(phase) c.
                let gpp = C64::new(cs, 0.0);
                let gpq = C64::new(sn, 0.0);
                let gqp = -phase.conj() * sn;
                let gqq = phase.conj() * cs;
                for i in 0..m {
                    let x = cols[p][i];
                    let y = cols[q][i];
                    cols[p][i] = x * gpp + y * gqp;
                    cols[q][i] = x * gpq + y * gqq;
                }
                for i in 0..n {
                    let x = v[(i, p)];
                    let y = v[(i, q)];
                    v[(i, p)] = x * gpp + y * gqp;
                    v[(i, q)] = x * gpq + y * gqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let singular_values = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    Svd { singular_values, v }
}

fn threshold(s: &Svd, tol: f64) -> f64 {
    let smax = s.singular_values.iter().cloned().fold(0.0, f64::max);
    tol * smax.max(1.0)
}

/// Numerical rank: number of singular values above `tol·max(1, σ_max)`.
pub fn rank(a: &CMatrix, tol: f64) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    let s = svd_jacobi(a);
    let th = threshold(&s, tol);
    s.singular_values.iter().filter(|&&x| x > th).count()
}

/// Orthonormal basis of the null space as columns of an `n×k` matrix.
///
/// A direction counts as null when its singular value is at most
/// `tol·max(1, σ_max)`.
pub fn null_space(a: &CMatrix, tol: f64) -> CMatrix {
    let n = a.cols();
    if a.rows() == 0 {
        return CMatrix::identity(n);
    }
    let s = svd_jacobi(a);
    let th = threshold(&s, tol);
    let keep: Vec<usize> = (0..n).filter(|&j| s.singular_values[j] <= th).collect();
    CMatrix::from_fn(n, keep.len(), |i, j| s.v[(i, keep[j])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn rank_of_outer_product() {
        let u = CMatrix::column_vector(&[c(1.0, 0.0), c(0.0, 2.0), c(1.0, 1.0)]);
        let p = &u * &u.adjoint();
        assert_eq!(rank(&p, 1e-10), 1);
        let ns = null_space(&p, 1e-10);
        assert_eq!(ns.cols(), 2);
        assert!((&p * &ns).max_abs() < 1e-12);
    }

    #[test]
    fn wide_matrix_null_space() {
        let a = CMatrix::from_real_rows(&[&[1.0, 1.0, 0.0], &[0.0, 1.0, 1.0]]);
        let ns = null_space(&a, 1e-12);
        assert_eq!(ns.cols(), 1);
        assert!((&a * &ns).max_abs() < 1e-12);
    }

    #[test]
    fn singular_values_of_diagonal() {
        let s = svd_jacobi(&CMatrix::diag_real(&[3.0, -2.0]));
        let mut sv = s.singular_values.clone();
        sv.sort_by(f64::total_cmp);
        assert!((sv[0] - 2.0).abs() < 1e-15 && (sv[1] - 3.0).abs() < 1e-15);
        assert!((CMatrix::diag_real(&[3.0, -2.0]).op_norm() - 3.0).abs() < 1e-15);
    }
}
