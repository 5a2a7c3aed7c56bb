use num_complex::Complex64 as C64;

use crate::{CMatrix, LinalgError};

struct Lu {
    n: usize,
    lu: CMatrix,
    perm: Vec<usize>,
}

fn factor(a: &CMatrix) -> Result<Lu, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::DimensionMismatch("LU of a non-square matrix".into()));
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for k in 0..n {
        let (mut piv, mut best) = (k, lu[(k, k)].norm());
        for i in k + 1..n {
            let v = lu[(i, k)].norm();
            if v > best {
                piv = i;
                best = v;
            }
        }
        if best <= 1e-300_f64.max(scale * f64::EPSILON * 1e-3) {
            return Err(LinalgError::Singular);
        }
        if piv != k {
            perm.swap(piv, k);
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
        }
        let d = lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / d;
            lu[(i, k)] = f;
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let t = lu[(k, j)];
                lu[(i, j)] -= f * t;
            }
        }
    }
    Ok(Lu { n, lu, perm })
}

impl Lu {
    fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.n;
        let mut y: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let t = self.lu[(i, k)] * y[k];
                y[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let t = self.lu[(i, k)] * y[k];
                y[i] -= t;
            }
            y[i] /= self.lu[(i, i)];
        }
        y
    }
}

/// Solves `a x = b` column by column with partial pivoting.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch("right-hand side rows".into()));
    }
    let lu = factor(a)?;
    let mut x = CMatrix::zeros(a.cols(), b.cols());
    for j in 0..b.cols() {
        x.set_column(j, &lu.solve_vec(&b.column(j)));
    }
    Ok(x)
}

/// Inverse of a square matrix.
pub fn inverse(a: &CMatrix) -> Result<CMatrix, LinalgError> {
    solve(a, &CMatrix::identity(a.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    #[test]
    fn inverse_round_trip() {
        let a = CMatrix::new(
            3,
            3,
            vec![
                c(0.0, 1.0),
                c(2.0, 0.0),
                c(1.0, 1.0),
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(3.0, 0.0),
                c(0.5, 0.0),
                c(1.0, -1.0),
                c(0.0, 0.0),
            ],
        );
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).dist(&CMatrix::identity(3)) < 1e-13);
    }

    #[test]
    fn singular_detected() {
        let a = CMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert_eq!(inverse(&a).unwrap_err(), LinalgError::Singular);
    }
}
