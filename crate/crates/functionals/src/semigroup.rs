//! Convolution-exponential semigroups `μ_t = exp_⋆(−tL)`.

use numlin::{c, expm, hermitian_eig, null_space, CMatrix};

use crate::pd::functional_from_blocks;
use crate::positivity::{min_gram_eigenvalue, window_gram};
use crate::{Functional, FunctionalError, Parent};

/// Agreement required between the closed form and the convolution series.
pub const SERIES_TOL: f64 = 1e-9;
/// Series terms below this block norm end the summation.
const TERM_CUTOFF: f64 = 1e-15;
const MAX_TERMS: usize = 60;

/// Residuals of the basic generator conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorCheck {
    /// `|L(1)|`.
    pub unit_residual: f64,
    /// `max |L(a*) − conj L(a)|` over the basis.
    pub self_adjoint_residual: f64,
    /// Largest eigenvalue of `a ↦ L(a*a)` on `ker ε`; non-positive for a generator.
    pub max_cnd_eigenvalue: f64,
    /// Magnitude used to scale the tolerance.
    pub scale: f64,
}

impl GeneratorCheck {
    pub fn passes(&self, tol: f64) -> bool {
        let t = tol * self.scale;
        self.unit_residual <= t && self.self_adjoint_residual <= t && self.max_cnd_eigenvalue <= t
    }
}

/// Evaluates `L(1) = 0`, self-adjointness and conditional negative definiteness.
///
/// On a window the last condition is tested on the Bochner matrix over the
/// half-radius ball, restricted to coefficient vectors summing to zero.
pub fn generator_check(l: &Functional) -> Result<GeneratorCheck, FunctionalError> {
    let unit_residual = l.value_at_unit().norm();
    let self_adjoint_residual = numlin::max_abs_diff(l.conjugate().coeffs(), l.coeffs());
    let (form, scale) = match l.parent() {
        Parent::Finite(q) => {
            let counit = CMatrix::new(1, q.dim(), q.counit_vector().to_vec());
            let x = null_space(&counit, 1e-12);
            let g = q.gram(l.coeffs());
            let scale = g.max_abs().max(1.0);
            (&(&x.adjoint() * &g) * &x, scale)
        }
        Parent::Window(w) => {
            let g = window_gram(w, |k| l.at(k))?;
            let n = g.rows();
            let p = CMatrix::from_fn(n, n, |i, j| c(if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64, 0.0));
            let scale = g.max_abs().max(1.0);
            (&(&p * &g) * &p, scale)
        }
    };
    let max_cnd_eigenvalue = if form.rows() == 0 {
        0.0
    } else {
        let defect = form.hermitian_defect();
        let ev = hermitian_eig(&form.hermitian_part())?;
        ev.values[ev.values.len() - 1].max(defect)
    };
    Ok(GeneratorCheck { unit_residual, self_adjoint_residual, max_cnd_eigenvalue, scale })
}

/// Fails with `NotGenerating` unless the basic generator conditions hold to `tol`.
pub fn require_generator(l: &Functional, tol: f64) -> Result<GeneratorCheck, FunctionalError> {
    let check = generator_check(l)?;
    if check.passes(tol) {
        Ok(check)
    } else {
        Err(FunctionalError::NotGenerating(format!(
            "|L(1)| = {:.3e}, self-adjointness {:.3e}, CND eigenvalue {:.3e}",
            check.unit_residual, check.self_adjoint_residual, check.max_cnd_eigenvalue
        )))
    }
}

/// `exp_⋆(ν) = Σ_k ν^{⋆k}/k!` by the convolution series.
///
/// The series is summed for `ν/2^s` with block norm at most `1/2`, stopping
/// once a term falls below `1e−15` or after 60 terms, and the result is
/// convolution-squared `s` times.
pub fn exp_star_series(nu: &Functional) -> Result<Functional, FunctionalError> {
    let norm = nu.block_norm();
    let mut s = 0u32;
    while norm / f64::powi(2.0, s as i32) > 0.5 {
        s += 1;
    }
    let small = nu.scale(c(f64::powi(2.0, -(s as i32)), 0.0));
    let mut term = Functional::counit(nu.parent().clone());
    let mut sum = term.clone();
    for k in 1..=MAX_TERMS {
        term = term.convolve(&small)?.scale(c(1.0 / k as f64, 0.0));
        sum = sum.combine(c(1.0, 0.0), &term, c(1.0, 0.0))?;
        if term.block_norm() < TERM_CUTOFF {
            break;
        }
    }
    for _ in 0..s {
        sum = sum.convolve(&sum)?;
    }
    Ok(sum)
}

/// `μ_t` in closed form: `expm(−tL^α)` blockwise, or `e^{−tL(γ)}` on a window.
pub fn exp_closed(l: &Functional, t: f64) -> Result<Functional, FunctionalError> {
    match l.parent() {
        Parent::Finite(_) => {
            let blocks = l.blocks().iter().map(|b| expm(&b.scale(c(-t, 0.0)))).collect::<Result<Vec<_>, _>>()?;
            functional_from_blocks(l.parent().clone(), &blocks)
        }
        Parent::Window(_) => Ok(Functional::from_fn(l.parent().clone(), |g| (l.at(g) * (-t)).exp())),
    }
}

/// `μ_t` by the convolution series of `−tL`.
pub fn exp_series(l: &Functional, t: f64) -> Result<Functional, FunctionalError> {
    exp_star_series(&l.scale(c(-t, 0.0)))
}

/// The semigroup `μ_t = exp_⋆(−tL)` on a grid of times.
///
/// `L` must pass [`require_generator`]. Each `μ_t` is computed in closed
/// form and checked against the convolution series to [`SERIES_TOL`].
pub fn conv_exp_semigroup(l: &Functional, t_grid: &[f64]) -> Result<Vec<Functional>, FunctionalError> {
    require_generator(l, 1e-9)?;
    t_grid
        .iter()
        .map(|&t| {
            let closed = exp_closed(l, t)?;
            let series = exp_series(l, t)?;
            let residual = closed.block_distance(&series)?;
            if !(residual <= SERIES_TOL) {
                return Err(FunctionalError::SeriesDivergence { residual });
            }
            Ok(closed)
        })
        .collect()
}

/// Residuals of the semigroup properties on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SemigroupReport {
    /// `max_{s,t} ‖μ_s⋆μ_t − μ_{s+t}‖` over grid pairs.
    pub law_residual: f64,
    /// `‖μ_0 − ε‖`.
    pub identity_residual: f64,
    /// `max_t |μ_t(1) − 1|`.
    pub unit_residual: f64,
    /// Smallest positivity Gram eigenvalue over the grid.
    pub min_gram_eigenvalue: f64,
}

/// Evaluates the semigroup law, `μ_0 = ε` and the state property.
pub fn semigroup_report(l: &Functional, t_grid: &[f64]) -> Result<SemigroupReport, FunctionalError> {
    let mus = conv_exp_semigroup(l, t_grid)?;
    let mut law_residual: f64 = 0.0;
    for (i, &s) in t_grid.iter().enumerate() {
        for (j, &t) in t_grid.iter().enumerate() {
            let lhs = mus[i].convolve(&mus[j])?;
            law_residual = law_residual.max(lhs.block_distance(&exp_closed(l, s + t)?)?);
        }
    }
    let identity_residual = exp_closed(l, 0.0)?.block_distance(&Functional::counit(l.parent().clone()))?;
    let mut unit_residual: f64 = 0.0;
    let mut min_gram = f64::INFINITY;
    for mu in &mus {
        unit_residual = unit_residual.max((mu.value_at_unit() - c(1.0, 0.0)).norm());
        min_gram = min_gram.min(min_gram_eigenvalue(mu)?.0);
    }
    Ok(SemigroupReport { law_residual, identity_residual, unit_residual, min_gram_eigenvalue: min_gram })
}

/// Accuracy of recovering `L` from `μ_h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeRecovery {
    pub h: f64,
    /// `‖(ε − μ_h)/h − L‖`.
    pub forward_error: f64,
    /// `h‖L‖² e^{h‖L‖}/2`, an upper bound for the forward error.
    pub forward_bound: f64,
    /// `‖2D(h/2) − D(h) − L‖` with `D(h) = (ε − μ_h)/h`.
    pub richardson_error: f64,
}

/// Forward and Richardson-extrapolated difference quotients at step `h`.
pub fn derivative_recovery(l: &Functional, h: f64) -> Result<DerivativeRecovery, FunctionalError> {
    let eps = Functional::counit(l.parent().clone());
    let quotient = |step: f64| -> Result<Functional, FunctionalError> {
        eps.combine(c(1.0 / step, 0.0), &exp_closed(l, step)?, c(-1.0 / step, 0.0))
    };
    let d_h = quotient(h)?;
    let d_half = quotient(h / 2.0)?;
    let rich = d_half.combine(c(2.0, 0.0), &d_h, c(-1.0, 0.0))?;
    let norm = l.block_norm();
    Ok(DerivativeRecovery {
        h,
        forward_error: d_h.block_distance(l)?,
        forward_bound: 0.5 * h * norm * norm * (h * norm).exp() + 1e-12,
        richardson_error: rich.block_distance(l)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qg_core::presets;

    fn kp() -> Parent {
        presets::kac_paljutkin().unwrap().into()
    }

    #[test]
    fn zero_generator_gives_counit() {
        let p = kp();
        let mus = conv_exp_semigroup(&Functional::zero(p.clone()), &[0.0, 1.0, 10.0]).unwrap();
        for mu in mus {
            assert!(mu.block_distance(&Functional::counit(p.clone())).unwrap() < 1e-15);
        }
    }

    #[test]
    fn word_length_on_integers() {
        let p: Parent = presets::window_preset("Z(1)", 8).unwrap().into();
        let w = p.window().unwrap().clone();
        let l = Functional::from_fn(p, |g| c(w.as_integer(g).unwrap().abs() as f64, 0.0));
        let mu = &conv_exp_semigroup(&l, &[1.0]).unwrap()[0];
        let two = w.from_integer(2).unwrap();
        assert!((mu.at(two).re - 0.135_335_283_236_612_7).abs() < 1e-15);
        // Series oracle: pointwise powers.
        let series: f64 = (0..60).fold((0.0, 1.0), |(s, t), k| (s + t, t * -2.0 / (k + 1) as f64)).0;
        assert!((mu.at(two).re - series).abs() < 1e-13);
    }

    #[test]
    fn central_generator_on_kac_paljutkin() {
        let p = kp();
        let q = p.finite().unwrap().clone();
        let triv = q.trivial_irrep();
        let blocks: Vec<CMatrix> = q
            .irreps()
            .iter()
            .enumerate()
            .map(|(a, irr)| CMatrix::identity(irr.dim).scale(c(if a == triv { 0.0 } else { 1.0 + a as f64 }, 0.0)))
            .collect();
        let l = Functional::from_blocks(p, &blocks).unwrap();
        for t in [0.1, 1.0, 10.0] {
            let closed = exp_closed(&l, t).unwrap();
            let series = exp_series(&l, t).unwrap();
            assert!(closed.block_distance(&series).unwrap() < 1e-10);
            for (a, b) in closed.blocks().iter().enumerate() {
                let c_a = if a == triv { 0.0 } else { 1.0 + a as f64 };
                let expected = CMatrix::identity(b.rows()).scale(c((-t * c_a).exp(), 0.0));
                assert!(b.dist(&expected) < 1e-12);
            }
        }
    }

    #[test]
    fn non_generators_rejected() {
        let p = kp();
        let h = Functional::haar(p.clone()).unwrap();
        // −(ε − h) is conditionally positive, not negative.
        let bad = h.combine(c(1.0, 0.0), &Functional::counit(p.clone()), c(-1.0, 0.0)).unwrap();
        assert!(matches!(conv_exp_semigroup(&bad, &[1.0]), Err(FunctionalError::NotGenerating(_))));
        let shifted = Functional::counit(p);
        assert!(matches!(require_generator(&shifted, 1e-9), Err(FunctionalError::NotGenerating(_))));
    }

    #[test]
    fn semigroup_from_random_state() {
        let p = kp();
        let mu = crate::random_state(&p, 0).unwrap();
        let l = Functional::counit(p).combine(c(3.0, 0.0), &mu, c(-3.0, 0.0)).unwrap();
        let r = semigroup_report(&l, &[0.0, 0.1, 1.0, 10.0]).unwrap();
        assert!(r.law_residual < 1e-9);
        assert!(r.identity_residual < 1e-15);
        assert!(r.unit_residual < 1e-12);
        assert!(r.min_gram_eigenvalue > -1e-9);
        let d = derivative_recovery(&l, 1e-4).unwrap();
        assert!(d.forward_error <= d.forward_bound);
        assert!(d.richardson_error < 1e-5);
    }
}
