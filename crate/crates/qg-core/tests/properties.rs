use numlin::{c, CMatrix, C64};
use proptest::prelude::*;
use qg_core::presets;
use qg_core::DualBlockAlgebra;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<C64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_map(|v| v.into_iter().map(|(a, b)| c(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn haar_is_positive_on_squares(a in coeffs(8)) {
        let q = presets::kac_paljutkin().unwrap();
        let v = q.haar(&q.mul(&q.star(&a), &a));
        prop_assert!(v.im.abs() < 1e-12);
        prop_assert!(v.re >= -1e-12);
        // Faithful: zero only for a = 0.
        prop_assert!(v.re > 1e-6 * numlin::vec_norm(&a).powi(2));
    }

    #[test]
    fn haar_is_bi_invariant_on_random_elements(a in coeffs(8)) {
        let q = presets::kac_paljutkin().unwrap();
        let d = q.dim();
        let da = q.comult(&a);
        let mut left = vec![c(0.0, 0.0); d];
        for p in 0..d * d {
            left[p % d] += q.haar_vector()[p / d] * da[p];
        }
        let target: Vec<C64> = q.unit().iter().map(|u| u * q.haar(&a)).collect();
        prop_assert!(numlin::vec_dist(&left, &target) < 1e-12);
    }

    #[test]
    fn star_is_antimultiplicative(a in coeffs(6), b in coeffs(6)) {
        let q = presets::fun_s3().unwrap();
        let l = q.star(&q.mul(&a, &b));
        let r = q.mul(&q.star(&b), &q.star(&a));
        prop_assert!(numlin::vec_dist(&l, &r) < 1e-12);
    }

    #[test]
    fn dual_coproduct_is_multiplicative(x in coeffs(8), y in coeffs(8)) {
        let q = presets::kac_paljutkin().unwrap();
        let dual = DualBlockAlgebra::build(&q).unwrap();
        let l = dual.comult(&dual.mul(&x, &y));
        let r = dual.mul2(&dual.comult(&x), &dual.comult(&y));
        prop_assert!(numlin::vec_dist(&l, &r) < 1e-10);
    }

    #[test]
    fn ucoords_round_trip(a in coeffs(8)) {
        let q = presets::kac_paljutkin().unwrap();
        let back = q.from_ucoords(&q.to_ucoords(&a));
        prop_assert!(numlin::vec_dist(&back, &a) < 1e-12);
    }

    #[test]
    fn window_products_are_associative(a in 0usize..41, b in 0usize..41, d in 0usize..41) {
        let w = presets::window_preset("free(2)", 3).unwrap();
        let n = w.len();
        let (a, b, d) = (a % n, b % n, d % n);
        if let (Some(l), Some(r)) = (w.product(a, b).and_then(|x| w.product(x, d)), w.product(b, d).and_then(|y| w.product(a, y))) {
            prop_assert_eq!(l, r);
        }
        prop_assert_eq!(w.length(w.inverse(a)), w.length(a));
    }

    #[test]
    fn block_form_round_trip(x in coeffs(6)) {
        let q = presets::fun_s3().unwrap();
        let dual = DualBlockAlgebra::build(&q).unwrap();
        let blocks: Vec<CMatrix> = dual.to_blocks(&x);
        prop_assert_eq!(dual.from_blocks(&blocks), x);
    }
}
