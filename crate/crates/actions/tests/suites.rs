use actions::*;
use coreps::{all_units, cyclic_generator, invariant_rank, Corep, CorepParent, FiniteParent};
use numlin::{c, CMatrix, C64};
use proptest::prelude::*;
use qg_core::{presets, SeededRng};

fn implemented() -> Vec<(&'static str, Implementation)> {
    preset_actions().unwrap().into_iter().map(|(n, a)| (n, implement(&a).unwrap())).collect()
}

fn grading_z2() -> Implementation {
    implement(&preset_action("grading-dual-z2-m2").unwrap()).unwrap()
}

#[test]
fn every_preset_is_implemented_unitarily() {
    for (name, imp) in implemented() {
        assert!(imp.unitarity_residual < 1e-9, "{name}: {}", imp.unitarity_residual);
        assert!(imp.implementation_residual < 1e-9, "{name}");
        assert!(imp.corep().validate().is_ok(), "{name}");
    }
}

#[test]
fn invariant_vectors_match_fixed_points() {
    // dim L²(N)^U = dim N^α for a faithful invariant state, and N^α = ℂ1
    // exactly when U has a one-dimensional invariant space.
    for (name, imp) in implemented() {
        let fp = fixed_point_expectation(&imp).unwrap();
        let rank = invariant_rank(imp.corep()).unwrap();
        assert_eq!(rank, fp.report.fixed_point_dim, "{name}");
        let ergodic = fp.report.fixed_point_dim == 1;
        assert_eq!(ergodic, rank == 1, "{name}");
        if name.starts_with("coproduct") {
            assert!(ergodic, "{name}: Δ is ergodic");
        }
    }
}

#[test]
fn grading_expectation_is_the_diagonal_compression() {
    let imp = grading_z2();
    let fp = fixed_point_expectation(&imp).unwrap();
    let alg = imp.action().algebra();
    let mut rng = SeededRng::new(3);
    for _ in 0..10 {
        let x = rng.complex_vec(4);
        let xm = alg.to_matrix(&x);
        let compressed = CMatrix::from_fn(2, 2, |i, j| if i == j { xm[(i, j)] } else { c(0.0, 0.0) });
        assert!(alg.to_matrix(&fp.apply(&x)).dist(&compressed) < 1e-10);
    }
    assert!(fp.report.bimodule_residual < 1e-9);
    assert_eq!(fp.report.fixed_point_dim, 2);
}

#[test]
fn perturbed_expectation_breaks_the_bimodule_identity() {
    let imp = grading_z2();
    let fp = fixed_point_expectation(&imp).unwrap();
    let mut f = fp.e.clone();
    f += &unit_perturbation(&imp, 0.1);
    assert!(bimodule_defect(&imp, &fp.e).unwrap() < 1e-9);
    assert!(bimodule_defect(&imp, &f).unwrap() > 1e-3);
}

#[test]
fn cone_preserved_on_every_preset() {
    for (name, imp) in implemented() {
        let q = &imp.action().parent().qg;
        let mut rng = SeededRng::new(5);
        let xis: Vec<Vec<C64>> = vec![q.unit().to_vec(), rng.complex_vec(q.dim())];
        let r = cone_preservation_check(&imp, &xis).unwrap();
        assert!(r.preserved, "{name}: {r:?}");
    }
}

#[test]
fn twisted_implementation_leaves_the_cone() {
    // (1⊗w)U with w right multiplication by diag(1, i) still implements α
    // but is not the canonical implementation.
    let imp = grading_z2();
    let alg = imp.action().algebra();
    let w = imp.right(&alg.from_matrix(&CMatrix::diag(&[c(1.0, 0.0), c(0.0, 1.0)])));
    let q = &imp.action().parent().qg;
    let xis = vec![q.unit().to_vec(), q.basis_vector(1)];
    let u = slice_matrix(&imp, &xis).unwrap();
    let twisted: Vec<Vec<CMatrix>> = u.iter().map(|row| row.iter().map(|m| &w * m).collect()).collect();
    let family = cone_test_family(alg, 2, 11, 24);
    assert!(preserves_cone(alg, &u, &family).unwrap().preserved);
    assert!(!preserves_cone(alg, &twisted, &family).unwrap().preserved);
}

#[test]
fn adjoint_action_is_implemented_by_v_tensor_vbar() {
    let fun_s3 = FiniteParent::new(presets::fun_s3().unwrap()).unwrap();
    let v = Corep::irrep(CorepParent::Finite(fun_s3.clone()), 2).unwrap();
    let r = v_vbar_implementation_check(&v).unwrap();
    assert!(r.equivalent && r.intertwiner_residual < 1e-8, "{r:?}");
    let kp = FiniteParent::new(presets::kac_paljutkin().unwrap()).unwrap();
    let w = Corep::irrep(CorepParent::Finite(kp.clone()), 4).unwrap();
    assert_eq!(w.dim(), 2);
    let r = v_vbar_implementation_check(&w).unwrap();
    assert!(r.equivalent, "{r:?}");
    let sum = Corep::direct_sum(&[Corep::irrep(CorepParent::Finite(kp), 1).unwrap(), w]).unwrap();
    assert!(v_vbar_implementation_check(&sum).unwrap().equivalent);
}

#[test]
fn spectral_gap_indicators_agree_on_presets() {
    for (name, imp) in implemented() {
        let r = spectral_gap_report(&imp, None).unwrap();
        assert!(r.consistent && r.spectral_gap, "{name}: {r:?}");
        assert_eq!(r.q_size, all_units(imp.corep().parent()).len());
    }
}

#[test]
fn cyclic_self_action_gap() {
    for n in [3usize, 5, 8] {
        let p = FiniteParent::new(presets::dual_z(n).unwrap()).unwrap();
        let imp = implement(&Action::comultiplication(p).unwrap()).unwrap();
        let x = cyclic_generator(imp.corep()).unwrap();
        let r = spectral_gap_report(&imp, Some(&[x])).unwrap();
        let expect = 2.0 * (std::f64::consts::PI / n as f64).sin();
        assert!((r.gap - expect).abs() < 1e-9, "n = {n}: {}", r.gap);
    }
}

#[test]
fn json_round_trip() {
    for (name, a) in preset_actions().unwrap() {
        let back = Action::from_json(&a.to_json(), a.parent().clone()).unwrap();
        assert!(back.alpha_matrix().dist(a.alpha_matrix()) == 0.0, "{name}");
        assert_eq!(back.algebra().blocks(), a.algebra().blocks());
    }
}

#[test]
fn non_multiplicative_map_rejected() {
    let p = FiniteParent::new(presets::dual_z(2).unwrap()).unwrap();
    let good = Action::grading(p.clone(), &[2], &[0, 1]).unwrap();
    let alpha = good.alpha_matrix().scale_real(2.0);
    let bad = Action::new(p, good.algebra().clone(), alpha, None);
    assert!(matches!(bad, Err(ActionError::NotAnAction { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bridge_bounds_vector_defect(seed in 0u64..1000, which in 0usize..8) {
        let imp = implement(&preset_action(PRESET_ACTION_NAMES[which]).unwrap()).unwrap();
        let mut rng = SeededRng::new(seed);
        let m = imp.action().algebra().dim();
        let d = imp.action().parent().qg.dim();
        let x = rng.complex_vec(m);
        let omegas: Vec<Vec<C64>> = (0..3).map(|_| rng.complex_vec(d)).collect();
        let r = almost_invariance_bridge(&imp, &x, &omegas).unwrap();
        prop_assert!((r.constant - 1.0).abs() < 1e-12);
        prop_assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn fixed_points_are_invariant_and_expectation_is_positive(seed in 0u64..1000, which in 0usize..8) {
        let imp = implement(&preset_action(PRESET_ACTION_NAMES[which]).unwrap()).unwrap();
        let fp = fixed_point_expectation(&imp).unwrap();
        let alg = imp.action().algebra();
        let mut rng = SeededRng::new(seed);
        let x = rng.complex_vec(alg.dim());
        let ex = fp.apply(&alg.mul(&alg.star(&x), &x));
        let min = numlin::hermitian_eig(&alg.to_matrix(&ex).hermitian_part()).unwrap().values[0];
        prop_assert!(min > -1e-9);
        // Invariant vectors are exactly Λ of fixed points.
        let xi = imp.lambda(&fp.apply(&x));
        let p = coreps::invariant_projection(imp.corep()).unwrap();
        prop_assert!(numlin::max_abs_diff(&p.matvec(&xi), &xi) < 1e-9);
    }

    #[test]
    fn cone_preserved_for_random_slices(seed in 0u64..1000, which in 0usize..8) {
        let imp = implement(&preset_action(PRESET_ACTION_NAMES[which]).unwrap()).unwrap();
        let d = imp.action().parent().qg.dim();
        let mut rng = SeededRng::new(seed);
        let xis: Vec<Vec<C64>> = (0..2).map(|_| rng.complex_vec(d)).collect();
        prop_assert!(cone_preservation_check(&imp, &xis).unwrap().preserved);
    }
}
