use numlin::{c, expm, hermitian_eig, kron, CMatrix};
use proptest::prelude::*;

fn matrix(n: usize, m: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * m)
        .prop_map(move |v| CMatrix::new(n, m, v.into_iter().map(|(a, b)| c(a, b)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_mixed_product(a in matrix(2, 2), b in matrix(2, 2), cc in matrix(2, 2), d in matrix(2, 2)) {
        let lhs = &kron(&a, &b) * &kron(&cc, &d);
        let rhs = kron(&(&a * &cc), &(&b * &d));
        prop_assert!(lhs.dist(&rhs) < 1e-12);
    }

    #[test]
    fn kron_trace(a in matrix(3, 3), b in matrix(2, 2)) {
        let t = kron(&a, &b).trace();
        prop_assert!((t - a.trace() * b.trace()).norm() < 1e-12);
    }

    #[test]
    fn kron_associative(a in matrix(2, 3), b in matrix(2, 2), cc in matrix(3, 1)) {
        // Complex products round differently under regrouping.
        prop_assert!(kron(&kron(&a, &b), &cc).dist(&kron(&a, &kron(&b, &cc))) < 1e-13);
    }

    #[test]
    fn unitary_exponential_of_skew(h in matrix(4, 4)) {
        let herm = (&h + &h.adjoint()).scale_real(0.5);
        let u = expm(&herm.scale(c(0.0, 1.0))).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-10);
    }

    #[test]
    fn eigenvalues_sum_to_trace(h in matrix(5, 5)) {
        let herm = (&h + &h.adjoint()).scale_real(0.5);
        let e = hermitian_eig(&herm).unwrap();
        let s: f64 = e.values.iter().sum();
        prop_assert!((s - herm.trace().re).abs() < 1e-10);
    }
}
