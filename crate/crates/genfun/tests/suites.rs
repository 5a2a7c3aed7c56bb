use std::sync::Arc;

use functionals::pd::functional_from_blocks;
use functionals::{derivative_recovery, exp_closed, min_gram_eigenvalue, random_state, Functional, Parent};
use genfun::*;
use numlin::{c, CMatrix, C64};
use proptest::prelude::*;
use qg_core::{presets, GroupDualWindow, WindowGroup};

fn central(q: qg_core::FiniteQg, cs: &[f64]) -> Functional {
    let dims: Vec<usize> = q.irreps().iter().map(|i| i.dim).collect();
    let blocks: Vec<CMatrix> = dims.iter().zip(cs).map(|(&n, &x)| CMatrix::identity(n).scale(c(x, 0.0))).collect();
    functional_from_blocks(q.into(), &blocks).unwrap()
}

/// `c_α = α` on Kac–Paljutkin.
fn kp_index_weighted() -> Functional {
    central(presets::kac_paljutkin().unwrap(), &[0.0, 1.0, 2.0, 3.0, 4.0])
}

fn word_length(name: &str, r: usize) -> Functional {
    let w = Arc::new(presets::window_preset(name, r).unwrap());
    let wc = w.clone();
    Functional::from_fn(Parent::Window(w), move |g| c(wc.length(g) as f64, 0.0))
}

/// `ε − h`, central and `S`-invariant on every Kac preset.
fn counit_minus_haar(q: qg_core::FiniteQg) -> Functional {
    let p: Parent = q.into();
    Functional::counit(p.clone()).combine(c(1.0, 0.0), &Functional::haar(p).unwrap(), c(-1.0, 0.0)).unwrap()
}

#[test]
fn kac_paljutkin_v_matrices_and_t_norms() {
    let g = validate_generating(&kp_index_weighted()).unwrap();
    assert!(g.central && g.s_invariant);
    let t = schurmann_triple(&g).unwrap();
    assert!(t.gram_imaginary_residual < 1e-8);
    assert!(t.representation_residual().unwrap() < 1e-8);
    for alpha in 0..5 {
        for beta in 0..5 {
            let vs = build_v_matrices(&g, &t, alpha, beta, &[0, 1, 2, 3, 4]).unwrap();
            for v in &vs {
                assert!(v.hermitian_residual <= 1e-10);
                assert!(v.route_residual <= 1e-10);
                assert!(v.min_eigenvalue >= v.constructive_bound - 1e-9);
            }
            if alpha == 0 && beta == 0 {
                for v in &vs {
                    let n = v.matrix.rows();
                    assert!(v.matrix.dist(&CMatrix::identity(n).scale(c(v.c_gamma, 0.0))) < 1e-12);
                }
            }
        }
    }
    for gamma in 0..5 {
        assert!(check_t_norms(&g, &t, gamma).unwrap() < 1e-8);
    }
}

#[test]
fn zero_generator_has_zero_cocycle_and_v() {
    let g = validate_generating(&Functional::zero(presets::kac_paljutkin().unwrap().into())).unwrap();
    let t = schurmann_triple(&g).unwrap();
    assert_eq!(t.dim(), 0);
    for v in build_v_matrices(&g, &t, 4, 4, &[4]).unwrap() {
        assert!(v.matrix.max_abs() == 0.0);
    }
    assert_eq!(check_t_norms(&g, &t, 0).unwrap(), 0.0);
}

#[test]
fn word_length_on_z_has_linear_floors() {
    let l = word_length("Z(1)", 20);
    let w = l.parent().window().unwrap().clone();
    let g = validate_generating(&l).unwrap();
    let t = schurmann_triple(&g).unwrap();
    let gammas: Vec<usize> = (1..=10).map(|m| w.from_integer(m).unwrap()).collect();
    let vs = build_v_matrices(&g, &t, 0, 0, &gammas).unwrap();
    for (i, v) in vs.iter().enumerate() {
        assert_eq!(v.min_eigenvalue, (i + 1) as f64);
    }
    // V = |m + q − p| for α = p, β = q, γ = m.
    for (p, q, m) in [(2i64, 3i64, 1i64), (-1, 4, -2), (3, -3, 2)] {
        let idx = |x: i64| w.from_integer(x).unwrap();
        let v = build_v_matrices(&g, &t, idx(p), idx(q), &[idx(m)]).unwrap();
        assert_eq!(v[0].matrix[(0, 0)], c((m + q - p).abs() as f64, 0.0));
    }
}

#[test]
fn classical_cocycle_gram_on_z() {
    let l = word_length("Z(1)", 12);
    let w = l.parent().window().unwrap().clone();
    let t = schurmann_triple(&validate_generating(&l).unwrap()).unwrap();
    let gram = &t.cocycle_vectors.adjoint() * &t.cocycle_vectors;
    for (a, &ga) in t.domain.iter().enumerate() {
        for (b, &gb) in t.domain.iter().enumerate() {
            let (m, n) = (w.as_integer(ga).unwrap(), w.as_integer(gb).unwrap());
            let expected = (m.abs() + n.abs() - (m - n).abs()) as f64;
            assert!((gram[(a, b)] - expected).norm() < 1e-10);
        }
    }
    assert!(t.cocycle_residual < 1e-8);
}

#[test]
fn dual_z2_cocycle_is_one_dimensional() {
    let l = Functional::new(presets::dual_z(2).unwrap().into(), vec![c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
    let g = validate_generating(&l).unwrap();
    let t = schurmann_triple(&g).unwrap();
    assert_eq!(t.dim(), 1);
    let e1 = [c(0.0, 0.0), c(1.0, 0.0)];
    assert!((cocycle_inner(&t, &e1, &e1) - c(4.0, 0.0)).norm() < 1e-12);
    assert!(check_t_norms(&g, &t, 1).unwrap() < 1e-12);
}

#[test]
fn cosine_generators_on_cyclic_duals() {
    for n in [3usize, 5, 8] {
        let q = presets::dual_z(n).unwrap();
        let vals: Vec<C64> =
            (0..n).map(|k| c(1.0 - (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos(), 0.0)).collect();
        let l = Functional::new(q.into(), vals.clone()).unwrap();
        let g = validate_generating(&l).unwrap();
        let t = schurmann_triple(&g).unwrap();
        for gamma in 0..n {
            assert!(check_t_norms(&g, &t, gamma).unwrap() < 1e-8);
            let (tm, _) = t_operators(&t, gamma).unwrap();
            assert!(((&tm.adjoint() * &tm)[(0, 0)] - vals[gamma] * 2.0).norm() < 1e-10);
        }
    }
}

#[test]
fn t_norms_on_every_preset() {
    for name in ["fun-S3", "dual-S3", "kac-paljutkin", "dual-Z(6)", "fun-Z(7)"] {
        let q = presets::preset(name).unwrap();
        let irreps = q.irreps().len();
        let g = validate_generating(&counit_minus_haar(q)).unwrap();
        assert!(g.central && g.s_invariant, "{name}");
        let t = schurmann_triple(&g).unwrap();
        for gamma in 0..irreps {
            assert!(check_t_norms(&g, &t, gamma).unwrap() < 1e-8, "{name} γ={gamma}");
        }
    }
}

#[test]
fn non_central_generator_is_rejected_by_the_v_suite() {
    let p: Parent = presets::kac_paljutkin().unwrap().into();
    let mu = random_state(&p, 3).unwrap();
    let l = Functional::counit(p).combine(c(1.0, 0.0), &mu, c(-1.0, 0.0)).unwrap();
    let g = validate_generating(&l).unwrap();
    let t = schurmann_triple(&g).unwrap();
    assert!(t.identity_residual < 1e-9 && t.cocycle_residual < 1e-8);
    assert!(t.representation_residual().unwrap() < 1e-8);
    if !g.central {
        assert!(matches!(build_v_matrices(&g, &t, 0, 0, &[4]), Err(GenFunError::NotCentral { .. })));
    }
}

#[test]
fn schoenberg_on_free_group() {
    let l = word_length("free(2)", 6);
    validate_generating(&l).unwrap();
    for t in [0.1, 1.0, 10.0] {
        let (min, defect) = min_gram_eigenvalue(&exp_closed(&l, t).unwrap()).unwrap();
        assert!(min >= -1e-9 && defect < 1e-12, "t = {t}: {min}");
    }
    let bad = Functional::from_fn(l.parent().clone(), |g| -l.at(g));
    assert!(matches!(validate_generating(&bad), Err(GenFunError::NotCND { .. })));
    let (min, _) = min_gram_eigenvalue(&exp_closed(&bad, 0.1).unwrap()).unwrap();
    assert!(min < -1e-6, "a non-CND generator leaves the states at small t");
}

#[test]
fn derivative_round_trip_on_presets() {
    let p: Parent = presets::kac_paljutkin().unwrap().into();
    let mu = random_state(&p, 0).unwrap();
    let three = Functional::counit(p.clone()).combine(c(3.0, 0.0), &mu, c(-3.0, 0.0)).unwrap();
    for l in [kp_index_weighted(), three, counit_minus_haar(presets::fun_s3().unwrap())] {
        validate_generating(&l).unwrap();
        let norm = l.block_norm();
        for h in [1e-3, 1e-4] {
            let d = derivative_recovery(&l, h).unwrap();
            assert!(d.forward_error <= 5.0 * h * (1.0 + norm), "h = {h}: {}", d.forward_error);
        }
    }
}

#[test]
fn theorem69_on_a_long_line() {
    let w = Arc::new(GroupDualWindow::build_with_cap(WindowGroup::Lattice { rank: 1 }, 1 << 20, 5_000_000).unwrap());
    let seq = PoissonSequence { window: w.clone(), terms: 1_200_000 };
    let k_sets = length_ball(&w);
    let out = theorem69_constructor(&seq, 0.5, &k_sets, w.len()).unwrap();
    assert!(out.stages.len() >= 8, "{}", out.stop_reason);
    for s in &out.stages {
        assert!(s.witness_value >= s.bound, "stage {}", s.l);
        assert!(s.witness_deviation >= 0.5);
    }
    let evals: Vec<Arc<GroupDualWindow>> =
        (1..=out.stages.len()).map(|l| Arc::new(presets::window_preset("Z(1)", 2 * l).unwrap())).collect();
    let gens = out.validate_on(&seq, &w, &evals).unwrap();
    assert_eq!(gens.len(), out.stages.len());
    // The series matches direct evaluation of Σ 2^l (1 − e^{−|m|/k_l}).
    let m = w.from_integer(5).unwrap();
    let direct: f64 = out.stages.iter().map(|s| 2f64.powi(s.l as i32) * (1.0 - (-5.0 / s.k as f64).exp())).sum();
    assert!((out.l_value(&seq, m) - direct).abs() < 1e-12 * direct.max(1.0));
}

#[test]
fn lemma74_on_free_group() {
    let l = word_length("free(2)", 6);
    let w = l.parent().window().unwrap().clone();
    let e = w.identity();
    let zeta = vec![ZetaTerm { a: e, b: e, weight: c(1.0, 0.0) }];
    let gammas: Vec<usize> = (1..=3).map(|k| w.find(&vec![1i64; k]).unwrap()).collect();
    let rows = lemma74_experiment(&l, 1.0, &zeta, &gammas).unwrap();
    for (i, row) in rows.iter().enumerate() {
        let k = (i + 1) as f64;
        assert!((row.bound - (1.0 - 2.0 * (-2.0 * k).exp())).abs() < 1e-12);
    }
    assert!(rows.windows(2).all(|p| p[1].bound > p[0].bound));

    let g1 = w.find(&[1]).unwrap();
    let zeta = normalize(
        &l,
        1.0,
        &[ZetaTerm { a: e, b: e, weight: c(1.0, 0.0) }, ZetaTerm { a: g1, b: g1, weight: c(1.0, 0.0) }],
    )
    .unwrap();
    let gammas: Vec<usize> = (1..=3).map(|k| w.find(&vec![2i64; k]).unwrap()).collect();
    let rows = lemma74_experiment(&l, 1.0, &zeta, &gammas).unwrap();
    assert!(rows.windows(2).all(|p| p[1].bound > p[0].bound));
    assert!(rows.iter().all(|r| r.exact >= r.bound));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn central_cnd_cone_on_kac_paljutkin(w in proptest::collection::vec(0.0f64..3.0, 3)) {
        let tables = [[0.0, 1.0, 2.0, 3.0, 4.0], [0.0, 1.0, 1.0, 1.0, 1.0], [0.0, 1.0, 2.0, 3.0, 2.0]];
        let cs: Vec<f64> = (0..5).map(|a| (0..3).map(|i| w[i] * tables[i][a]).sum()).collect();
        let g = validate_generating(&central(presets::kac_paljutkin().unwrap(), &cs)).unwrap();
        let t = schurmann_triple(&g).unwrap();
        for v in build_v_matrices(&g, &t, 4, 4, &[1, 2, 4]).unwrap() {
            prop_assert!(v.hermitian_residual <= 1e-10);
            prop_assert!(v.route_residual <= 1e-10);
        }
        for gamma in 0..5 {
            prop_assert!(check_t_norms(&g, &t, gamma).unwrap() < 1e-8);
        }
    }

    #[test]
    fn schurmann_identity_on_free_group(a in 0.0f64..2.0, b in 0.0f64..2.0, s in 0.1f64..2.0) {
        let w = Arc::new(presets::window_preset("free(2)", 4).unwrap());
        let wc = w.clone();
        let l = Functional::from_fn(Parent::Window(w), move |g| {
            let n = wc.length(g) as f64;
            c(a * n + b * (1.0 - (-s * n).exp()), 0.0)
        });
        let g = validate_generating(&l).unwrap();
        let t = schurmann_triple(&g).unwrap();
        prop_assert!(t.identity_residual < 1e-9);
        prop_assert!(t.cocycle_residual < 1e-8);
    }
}
