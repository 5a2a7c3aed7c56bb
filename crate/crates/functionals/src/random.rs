//! Seeded random states.

use numlin::{c, C64};
use qg_core::SeededRng;

use crate::{Functional, FunctionalError, Parent};

/// A random state.
///
/// On a finite parent this is `a ↦ h(x* a x)/h(x*x)` for a random `x`. On a
/// window it is the positive-definite function `γ ↦ Σ_g conj(x_g) x_{gγ}/‖x‖²`
/// of a random `x` supported on the half-radius ball.
pub fn random_state(parent: &Parent, seed: u64) -> Result<Functional, FunctionalError> {
    let mut rng = SeededRng::new(seed);
    match parent {
        Parent::Finite(q) => {
            let x = rng.complex_vec(q.dim());
            let xs = q.star(&x);
            let norm = q.haar(&q.mul(&xs, &x));
            Ok(Functional::from_fn(parent.clone(), |k| {
                let e = q.basis_vector(k);
                q.haar(&q.mul(&q.mul(&xs, &e), &x)) / norm
            }))
        }
        Parent::Window(w) => {
            let support = w.ball(w.radius() / 2);
            let mut x = vec![c(0.0, 0.0); w.len()];
            for &g in &support {
                x[g] = rng.complex();
            }
            let norm: f64 = x.iter().map(|z| z.norm_sqr()).sum();
            Ok(Functional::from_fn(parent.clone(), |gamma| {
                support.iter().filter_map(|&g| w.product(g, gamma).map(|h| x[g].conj() * x[h])).sum::<C64>() / norm
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{is_positive, is_state};
    use qg_core::presets;

    #[test]
    fn random_states_are_states() {
        for p in [
            Parent::from(presets::kac_paljutkin().unwrap()),
            Parent::from(presets::fun_s3().unwrap()),
            Parent::from(presets::dual_z(7).unwrap()),
            Parent::from(presets::window_preset("free(2)", 4).unwrap()),
            Parent::from(presets::window_preset("Z(1)", 10).unwrap()),
        ] {
            let mu = random_state(&p, 11).unwrap();
            assert!(is_state(&mu, 1e-9).unwrap(), "{}", p.id());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let p = Parent::from(presets::kac_paljutkin().unwrap());
        assert_eq!(random_state(&p, 5).unwrap().coeffs(), random_state(&p, 5).unwrap().coeffs());
        assert_ne!(random_state(&p, 5).unwrap().coeffs(), random_state(&p, 6).unwrap().coeffs());
        assert!(is_positive(&random_state(&p, 5).unwrap(), 1e-9).unwrap());
    }
}
