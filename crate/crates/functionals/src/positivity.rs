//! Positivity tests for functionals.

use numlin::{hermitian_eig, CMatrix};
use qg_core::{GroupDualWindow, QgError};

use crate::{Functional, FunctionalError, Parent};

/// Default tolerance for positivity decisions.
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Gram matrix whose positive semidefiniteness is equivalent to positivity.
///
/// For a finite parent this is `M[i][j] = μ(e_i* e_j)`. On a window it is
/// the Bochner matrix `[f(g⁻¹h)]` over the ball of radius `⌊r/2⌋`, the
/// largest sub-window on which every quotient is defined.
pub fn positivity_gram(mu: &Functional) -> Result<CMatrix, FunctionalError> {
    match mu.parent() {
        Parent::Finite(q) => Ok(q.gram(mu.coeffs())),
        Parent::Window(w) => window_gram(w, |g| mu.at(g)),
    }
}

/// Bochner matrix `[f(g⁻¹h)]_{g,h}` over the half-radius ball.
pub fn window_gram(w: &GroupDualWindow, f: impl Fn(usize) -> numlin::C64) -> Result<CMatrix, FunctionalError> {
    let half = w.radius() / 2;
    if half < 1 {
        return Err(QgError::WindowTruncation(format!(
            "radius-{} window of {} has no sub-window of radius ≥ 1 closed under quotients",
            w.radius(),
            w.group().label()
        ))
        .into());
    }
    let ball = w.ball(half);
    let n = ball.len();
    let mut m = CMatrix::zeros(n, n);
    for (a, &g) in ball.iter().enumerate() {
        for (b, &h) in ball.iter().enumerate() {
            m[(a, b)] = f(w.quotient_in_window(g, h)?);
        }
    }
    Ok(m)
}

/// Smallest eigenvalue of the positivity Gram matrix, together with its Hermitian defect.
pub fn min_gram_eigenvalue(mu: &Functional) -> Result<(f64, f64), FunctionalError> {
    let m = positivity_gram(mu)?;
    let defect = m.hermitian_defect();
    let ev = hermitian_eig(&m.hermitian_part())?;
    Ok((ev.values[0], defect))
}

/// Whether `μ(a*a) ≥ 0` for all `a`, up to `tol`.
pub fn is_positive(mu: &Functional, tol: f64) -> Result<bool, FunctionalError> {
    let (min, defect) = min_gram_eigenvalue(mu)?;
    Ok(defect <= tol && min >= -tol)
}

/// Whether `μ` is positive with `μ(1) = 1`.
pub fn is_state(mu: &Functional, tol: f64) -> Result<bool, FunctionalError> {
    Ok((mu.value_at_unit() - numlin::c(1.0, 0.0)).norm() <= tol && is_positive(mu, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use numlin::c;
    use qg_core::presets;

    #[test]
    fn haar_state_is_positive() {
        for q in [presets::kac_paljutkin().unwrap(), presets::fun_s3().unwrap(), presets::dual_s3().unwrap()] {
            let h = Functional::haar(q.into()).unwrap();
            assert!(is_state(&h, 1e-9).unwrap());
        }
    }

    #[test]
    fn exponential_decay_on_integers_is_positive() {
        let p: Parent = presets::window_preset("Z(1)", 6).unwrap().into();
        let w = p.window().unwrap().clone();
        let f = Functional::from_fn(p, |g| c((-(w.as_integer(g).unwrap().abs() as f64)).exp(), 0.0));
        let m = positivity_gram(&f).unwrap();
        assert_eq!(m.rows(), 7);
        let (min, _) = min_gram_eigenvalue(&f).unwrap();
        assert!(min >= -1e-9);
        assert!(is_positive(&f, 1e-9).unwrap());
    }

    #[test]
    fn tent_on_integers_is_not_positive() {
        let p: Parent = presets::window_preset("Z(1)", 6).unwrap().into();
        let w = p.window().unwrap().clone();
        let f = Functional::from_fn(p, |g| c(1.0 - w.as_integer(g).unwrap().abs() as f64, 0.0));
        let (min, _) = min_gram_eigenvalue(&f).unwrap();
        assert!(min < -0.1);
        assert!(!is_positive(&f, 1e-9).unwrap());
    }

    #[test]
    fn radius_one_window_truncates() {
        let p: Parent = presets::window_preset("free(2)", 1).unwrap().into();
        let f = Functional::counit(p);
        assert!(matches!(is_positive(&f, 1e-9), Err(FunctionalError::Qg(QgError::WindowTruncation(_)))));
    }

    #[test]
    fn negative_functional_rejected() {
        let h = Functional::haar(presets::dual_z(4).unwrap().into()).unwrap();
        assert!(!is_positive(&h.scale(c(-1.0, 0.0)), 1e-9).unwrap());
    }
}
