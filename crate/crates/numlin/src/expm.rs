use num_complex::Complex64 as C64;

use crate::{hermitian_eig, solve, CMatrix, LinalgError};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential.
///
/// Hermitian input goes through the eigendecomposition; everything else
/// through degree-13 Padé with scaling and squaring.
pub fn expm(m: &CMatrix) -> Result<CMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch(format!("expm of a {}×{} matrix", m.rows(), m.cols())));
    }
    if m.data().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    if m.rows() > 0 && m.hermitian_defect() <= 1e-14 * m.frobenius_norm().max(1.0) {
        return expm_hermitian(m);
    }
    expm_pade(m)
}

/// Exponential of a Hermitian matrix via its eigendecomposition.
pub fn expm_hermitian(m: &CMatrix) -> Result<CMatrix, LinalgError> {
    let e = hermitian_eig(m)?;
    Ok(e.map(|x| C64::new(x.exp(), 0.0)))
}

fn expm_pade(m: &CMatrix) -> Result<CMatrix, LinalgError> {
    let n = m.rows();
    if n == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    let norm = m.norm_1();
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = m.scale_real(0.5f64.powi(s));
    let id = CMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = |k: usize| C64::new(PADE13[k], 0.0);

    let mut inner_u = a6.scale(b(13));
    inner_u.axpy(b(11), &a4);
    inner_u.axpy(b(9), &a2);
    let mut u = &a6 * &inner_u;
    u.axpy(b(7), &a6);
    u.axpy(b(5), &a4);
    u.axpy(b(3), &a2);
    u.axpy(b(1), &id);
    let u = &a * &u;

    let mut inner_v = a6.scale(b(12));
    inner_v.axpy(b(10), &a4);
    inner_v.axpy(b(8), &a2);
    let mut v = &a6 * &inner_v;
    v.axpy(b(6), &a6);
    v.axpy(b(4), &a4);
    v.axpy(b(2), &a2);
    v.axpy(b(0), &id);

    let mut r = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

/// Truncated Taylor series `Σ_{k≤degree} m^k/k!`, used as an oracle.
pub fn expm_taylor(m: &CMatrix, degree: usize) -> CMatrix {
    let n = m.rows();
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..=degree {
        term = (&term * m).scale_real(1.0 / k as f64);
        sum += &term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, seed: u64, norm: f64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        g.scale_real(norm / g.op_norm())
    }

    #[test]
    fn zero_gives_identity() {
        assert!(expm(&CMatrix::zeros(3, 3)).unwrap().dist(&CMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn diagonal_case() {
        let e = expm(&CMatrix::diag_real(&[1.0, -1.0])).unwrap();
        assert!(e.dist(&CMatrix::diag_real(&[1f64.exp(), (-1f64).exp()])) < 1e-14);
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(expm(&CMatrix::zeros(2, 3)), Err(LinalgError::DimensionMismatch(_))));
    }

    #[test]
    fn matches_taylor_on_small_norm() {
        for seed in 0..8 {
            let m = random(4, seed, 1.0);
            let e = expm(&m).unwrap();
            assert!(e.dist(&expm_taylor(&m, 30)) < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn pade_agrees_with_eigen_route() {
        let g = random(5, 42, 6.0);
        let h = (&g + &g.adjoint()).scale_real(0.5);
        let by_eig = expm_hermitian(&h).unwrap();
        let by_pade = expm_pade(&h).unwrap();
        assert!(by_eig.dist(&by_pade) <= 1e-10 * by_eig.frobenius_norm());
    }

    #[test]
    fn large_norm_uses_squaring() {
        let m = CMatrix::new(2, 2, vec![c(0.0, 0.0), c(20.0, 0.0), c(-20.0, 0.0), c(0.0, 0.0)]);
        let e = expm(&m).unwrap();
        let expect = CMatrix::from_real_rows(&[&[20f64.cos(), 20f64.sin()], &[-(20f64.sin()), 20f64.cos()]]);
        assert!(e.dist(&expect) < 1e-11);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn commuting_diagonals_add(a in proptest::collection::vec(-3.0f64..3.0, 4), b in proptest::collection::vec(-3.0f64..3.0, 4)) {
            let ma = CMatrix::diag_real(&a);
            let mb = CMatrix::diag_real(&b);
            let lhs = expm(&(&ma + &mb)).unwrap();
            let rhs = &expm(&ma).unwrap() * &expm(&mb).unwrap();
            prop_assert!(lhs.dist(&rhs) <= 1e-9 * lhs.frobenius_norm());
        }
    }
}
