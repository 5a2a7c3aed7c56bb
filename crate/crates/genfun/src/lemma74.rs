//! Absence of invariant vectors for `π_t ⋆ π_t` on a group window: the
//! lower bound `‖(π_t⋆π_t)(γ)ζ − ζ‖² ≥ 1 − 2 Σ_{i,j} Re[μ_t(a_j⁻¹γa_i) μ_t(b_j⁻¹γb_i)]`.

use functionals::{Functional, Parent};
use numlin::{c, C64};
use serde::Serialize;

use crate::GenFunError;

/// Tolerance on `‖ζ‖ = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// `ζ = Σ_i w_i Λ(a_i) ⊗ Λ(b_i)` in the window GNS space of `μ_t ⊗ μ_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaTerm {
    pub a: usize,
    pub b: usize,
    pub weight: C64,
}

/// One row of the experiment.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma74Row {
    pub gamma: usize,
    pub length: usize,
    /// The displayed lower bound.
    pub bound: f64,
    /// `‖(π_t⋆π_t)(γ)ζ − ζ‖² = 2 − 2 Re⟨ζ, (π_t⋆π_t)(γ)ζ⟩`.
    pub exact: f64,
}

fn mu_t(l: &Functional, t: f64, g: usize) -> C64 {
    (l.at(g) * (-t)).exp()
}

/// `Σ_{i,j} conj(w_j) w_i μ_t(a_j⁻¹ γ a_i) μ_t(b_j⁻¹ γ b_i)`, with `γ = e`
/// giving `‖ζ‖²`.
fn pairing(l: &Functional, t: f64, zeta: &[ZetaTerm], gamma: usize) -> Result<C64, GenFunError> {
    let w = l.parent().window().ok_or_else(|| GenFunError::Schema("the ζ bounds run on a group window".into()))?;
    let mut s = c(0.0, 0.0);
    for zi in zeta {
        for zj in zeta {
            let x = w.product_in_window(w.product_in_window(w.inverse(zj.a), gamma)?, zi.a)?;
            let y = w.product_in_window(w.product_in_window(w.inverse(zj.b), gamma)?, zi.b)?;
            s += zj.weight.conj() * zi.weight * mu_t(l, t, x) * mu_t(l, t, y);
        }
    }
    Ok(s)
}

/// Norm of `ζ` in the window GNS space of `μ_t ⊗ μ_t`.
pub fn zeta_norm(l: &Functional, t: f64, zeta: &[ZetaTerm]) -> Result<f64, GenFunError> {
    let w = l.parent().window().ok_or_else(|| GenFunError::Schema("the ζ bounds run on a group window".into()))?;
    Ok(pairing(l, t, zeta, w.identity())?.re.max(0.0).sqrt())
}

/// Rescales `ζ` to unit norm.
pub fn normalize(l: &Functional, t: f64, zeta: &[ZetaTerm]) -> Result<Vec<ZetaTerm>, GenFunError> {
    let n = zeta_norm(l, t, zeta)?;
    if n == 0.0 {
        return Err(GenFunError::NotNormalized { norm: 0.0 });
    }
    Ok(zeta.iter().map(|z| ZetaTerm { weight: z.weight / n, ..z.clone() }).collect())
}

/// The bound and the exact squared distance for each `γ_l`.
///
/// `L` is a generating functional on the window; `μ_t = e^{−tL}` pointwise.
pub fn lemma74_experiment(
    l: &Functional,
    t: f64,
    zeta: &[ZetaTerm],
    gammas: &[usize],
) -> Result<Vec<Lemma74Row>, GenFunError> {
    let w = match l.parent() {
        Parent::Window(w) => w.clone(),
        Parent::Finite(_) => return Err(GenFunError::Schema("the ζ bounds run on a group window".into())),
    };
    let norm = zeta_norm(l, t, zeta)?;
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(GenFunError::NotNormalized { norm });
    }
    gammas
        .iter()
        .map(|&gamma| {
            let p = pairing(l, t, zeta, gamma)?;
            Ok(Lemma74Row { gamma, length: w.length(gamma), bound: 1.0 - 2.0 * p.re, exact: 2.0 - 2.0 * p.re })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use qg_core::presets;
    use std::sync::Arc;

    fn word_length(name: &str, r: usize) -> Functional {
        let w = Arc::new(presets::window_preset(name, r).unwrap());
        let wc = w.clone();
        Functional::from_fn(Parent::Window(w), move |g| c(wc.length(g) as f64, 0.0))
    }

    fn unit_zeta(e: usize) -> Vec<ZetaTerm> {
        vec![ZetaTerm { a: e, b: e, weight: c(1.0, 0.0) }]
    }

    #[test]
    fn vacuum_bound_on_z() {
        let l = word_length("Z(1)", 8);
        let w = l.parent().window().unwrap().clone();
        let gammas: Vec<usize> = (1..=5).map(|m| w.from_integer(m).unwrap()).collect();
        let rows = lemma74_experiment(&l, 1.0, &unit_zeta(w.identity()), &gammas).unwrap();
        for (m, row) in rows.iter().enumerate() {
            let l_ = (m + 1) as f64;
            assert!((row.bound - (1.0 - 2.0 * (-2.0 * l_).exp())).abs() < 1e-14);
            assert!((row.exact - row.bound - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn t_zero_is_vacuous() {
        let l = word_length("Z(1)", 4);
        let w = l.parent().window().unwrap().clone();
        let rows = lemma74_experiment(&l, 0.0, &unit_zeta(0), &[w.from_integer(2).unwrap()]).unwrap();
        assert!((rows[0].bound + 1.0).abs() < 1e-15);
    }

    #[test]
    fn unnormalised_zeta_rejected() {
        let l = word_length("free(2)", 4);
        let w = l.parent().window().unwrap().clone();
        let g1 = w.find(&[1]).unwrap();
        let zeta = vec![ZetaTerm { a: 0, b: 0, weight: c(1.0, 0.0) }, ZetaTerm { a: g1, b: g1, weight: c(1.0, 0.0) }];
        assert!(matches!(lemma74_experiment(&l, 1.0, &zeta, &[g1]), Err(GenFunError::NotNormalized { .. })));
        let z = normalize(&l, 1.0, &zeta).unwrap();
        assert!((zeta_norm(&l, 1.0, &z).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_window_products_are_truncation_errors() {
        let l = word_length("Z(1)", 3);
        let w = l.parent().window().unwrap().clone();
        let a = w.from_integer(2).unwrap();
        let zeta = vec![ZetaTerm { a, b: 0, weight: c(1.0, 0.0) }];
        let zeta = normalize(&l, 1.0, &zeta).unwrap();
        let g = w.from_integer(-3).unwrap();
        let err = lemma74_experiment(&l, 1.0, &zeta, &[g]).unwrap_err();
        assert!(matches!(err, GenFunError::Qg(qg_core::QgError::WindowTruncation(_))));
    }
}
