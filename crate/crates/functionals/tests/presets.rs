use functionals::{
    derivative_recovery, gauge_norm, gauge_strict, is_positive, pd_element, random_state, semigroup_report, Functional,
    Parent,
};
use numlin::{c, C64};
use qg_core::presets;
use qg_core::SeededRng;

fn finite_parents() -> Vec<Parent> {
    presets::list_presets()
        .into_iter()
        .filter(|p| p.kind == "finite")
        .map(|p| Parent::from(presets::preset(&p.name).unwrap()))
        .collect()
}

fn window_parents() -> Vec<Parent> {
    vec![
        presets::window_preset("free(1)", 6).unwrap().into(),
        presets::window_preset("free(2)", 4).unwrap().into(),
        presets::window_preset("free(3)", 3).unwrap().into(),
        presets::window_preset("Z(1)", 12).unwrap().into(),
        presets::window_preset("Z(2)", 4).unwrap().into(),
    ]
}

fn random_functional(p: &Parent, seed: u64) -> Functional {
    let mut rng = SeededRng::new(seed);
    Functional::new(p.clone(), rng.complex_vec(p.dim())).unwrap()
}

#[test]
fn convolution_is_associative_and_unital_on_every_preset() {
    for (k, p) in finite_parents().into_iter().chain(window_parents()).enumerate() {
        let a = random_functional(&p, 3 * k as u64);
        let b = random_functional(&p, 3 * k as u64 + 1);
        let d = random_functional(&p, 3 * k as u64 + 2);
        let left = a.convolve(&b).unwrap().convolve(&d).unwrap();
        let right = a.convolve(&b.convolve(&d).unwrap()).unwrap();
        assert!(numlin::max_abs_diff(left.coeffs(), right.coeffs()) < 1e-10, "{}", p.id());
        let eps = Functional::counit(p.clone());
        assert!(numlin::max_abs_diff(eps.convolve(&a).unwrap().coeffs(), a.coeffs()) < 1e-10);
        assert!(numlin::max_abs_diff(a.convolve(&eps).unwrap().coeffs(), a.coeffs()) < 1e-10);
        assert!(a.block_consistency_residual() < 1e-10, "{}", p.id());
    }
}

#[test]
fn semigroups_on_every_preset_and_window() {
    let grid = [0.0, 0.1, 1.0, 10.0];
    for (k, p) in finite_parents().into_iter().chain(window_parents()).enumerate() {
        let mu = random_state(&p, k as u64).unwrap();
        let l = Functional::counit(p.clone()).combine(c(3.0, 0.0), &mu, c(-3.0, 0.0)).unwrap();
        let r = semigroup_report(&l, &grid).unwrap();
        assert!(r.law_residual < 1e-9, "{}: {r:?}", p.id());
        assert!(r.identity_residual < 1e-12, "{}", p.id());
        assert!(r.unit_residual < 1e-9, "{}", p.id());
        assert!(r.min_gram_eigenvalue > -1e-9, "{}: {r:?}", p.id());
    }
}

#[test]
fn word_length_semigroup_on_free_group() {
    let p: Parent = presets::window_preset("free(2)", 6).unwrap().into();
    let w = p.window().unwrap().clone();
    let l = Functional::from_fn(p, |g| c(w.length(g) as f64, 0.0));
    let r = semigroup_report(&l, &[0.1, 1.0, 10.0]).unwrap();
    assert!(r.min_gram_eigenvalue >= -1e-9);
    assert!(r.law_residual < 1e-9);
}

#[test]
fn derivative_recovery_on_kac_paljutkin() {
    let p: Parent = presets::kac_paljutkin().unwrap().into();
    let mu = random_state(&p, 0).unwrap();
    let l = Functional::counit(p).combine(c(3.0, 0.0), &mu, c(-3.0, 0.0)).unwrap();
    let coarse = derivative_recovery(&l, 1e-2).unwrap();
    let fine = derivative_recovery(&l, 1e-3).unwrap();
    // First-order forward quotient, second-order extrapolation.
    let fwd_ratio = coarse.forward_error / fine.forward_error;
    let rich_ratio = coarse.richardson_error / fine.richardson_error;
    assert!((fwd_ratio - 10.0).abs() < 1.0, "{fwd_ratio}");
    assert!((rich_ratio - 100.0).abs() < 10.0, "{rich_ratio}");
    assert!(fine.forward_error <= fine.forward_bound);
}

#[test]
fn strict_gauge_never_exceeds_norm_gauge() {
    for (k, p) in finite_parents().into_iter().step_by(7).enumerate() {
        let a = pd_element(&random_state(&p, k as u64).unwrap()).unwrap();
        let all: Vec<usize> = (0..a.blocks.len()).collect();
        for f in [&all[..1], &all[..all.len() / 2], &all[..]] {
            assert!(gauge_strict(&a, f) <= gauge_norm(&a));
        }
    }
}

#[test]
fn positive_functionals_survive_the_operations() {
    for p in [
        Parent::from(presets::kac_paljutkin().unwrap()),
        Parent::from(presets::fun_s3().unwrap()),
        Parent::from(presets::dual_s3().unwrap()),
        Parent::from(presets::window_preset("free(2)", 4).unwrap()),
    ] {
        let a = random_state(&p, 1).unwrap();
        let b = random_state(&p, 2).unwrap();
        assert!(is_positive(&a.convolve(&b).unwrap(), 1e-9).unwrap());
        assert!(is_positive(&a.conjugate(), 1e-9).unwrap());
        assert!(is_positive(&a.combine(c(0.3, 0.0), &b, c(0.7, 0.0)).unwrap(), 1e-9).unwrap());
        let z: C64 = a.value_at_unit();
        assert!((z - c(1.0, 0.0)).norm() < 1e-12);
    }
}
