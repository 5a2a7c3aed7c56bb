use functionals::{gauge_norm, gauge_strict, is_positive, pd_element, random_state, Functional, Parent};
use numlin::{c, C64};
use proptest::prelude::*;
use qg_core::presets;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<C64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| c(a, b)).collect())
}

fn kp() -> Parent {
    presets::kac_paljutkin().unwrap().into()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn convolution_associative(a in coeffs(8), b in coeffs(8), d in coeffs(8)) {
        let p = kp();
        let (a, b, d) = (
            Functional::new(p.clone(), a).unwrap(),
            Functional::new(p.clone(), b).unwrap(),
            Functional::new(p, d).unwrap(),
        );
        let l = a.convolve(&b).unwrap().convolve(&d).unwrap();
        let r = a.convolve(&b.convolve(&d).unwrap()).unwrap();
        prop_assert!(numlin::max_abs_diff(l.coeffs(), r.coeffs()) < 1e-10);
    }

    #[test]
    fn convolution_is_blockwise_product(a in coeffs(6), b in coeffs(6)) {
        // Independent oracle: the dual blocks multiply as matrices.
        let p: Parent = presets::fun_s3().unwrap().into();
        let a = Functional::new(p.clone(), a).unwrap();
        let b = Functional::new(p, b).unwrap();
        let ab = a.convolve(&b).unwrap();
        for ((x, y), z) in a.blocks().iter().zip(b.blocks()).zip(ab.blocks()) {
            prop_assert!((x * &y).dist(&z) < 1e-10);
        }
    }

    #[test]
    fn positivity_closed_under_operations(s1 in 0u64..1000, s2 in 0u64..1000, t in 0.0f64..1.0) {
        let p = kp();
        let a = random_state(&p, s1).unwrap();
        let b = random_state(&p, s2).unwrap();
        prop_assert!(is_positive(&a.convolve(&b).unwrap(), 1e-9).unwrap());
        prop_assert!(is_positive(&a.conjugate(), 1e-9).unwrap());
        prop_assert!(is_positive(&a.combine(c(t, 0.0), &b, c(1.0 - t, 0.0)).unwrap(), 1e-9).unwrap());
    }

    #[test]
    fn pd_element_intertwines_convolution(s1 in 0u64..1000, s2 in 0u64..1000) {
        let p = kp();
        let a = random_state(&p, s1).unwrap();
        let b = random_state(&p, s2).unwrap();
        let ab = pd_element(&a.convolve(&b).unwrap()).unwrap();
        let prod = pd_element(&a).unwrap().block_product(&pd_element(&b).unwrap());
        prop_assert!(ab.distance_to(&prod) < 1e-10);
    }

    #[test]
    fn strict_gauge_bounded_by_norm_gauge(seed in 0u64..1000, r in 0usize..4) {
        let p: Parent = presets::window_preset("free(2)", 4).unwrap().into();
        let a = pd_element(&random_state(&p, seed).unwrap()).unwrap();
        let f = p.window().unwrap().ball(r);
        prop_assert!(gauge_strict(&a, &f) <= gauge_norm(&a));
    }

    #[test]
    fn json_round_trip(a in coeffs(8)) {
        let p = kp();
        let mu = Functional::new(p.clone(), a).unwrap();
        let back = Functional::from_json(&mu.to_json(), p).unwrap();
        prop_assert_eq!(back.coeffs(), mu.coeffs());
    }
}
