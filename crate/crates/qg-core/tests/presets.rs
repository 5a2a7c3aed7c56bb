use std::time::Instant;

use numlin::{c, C64};
use qg_core::presets::{self, list_presets, preset, window_preset};
use qg_core::{algebra_block_pattern, DualBlockAlgebra, FiniteQg, AXIOM_TOL};

fn finite_presets() -> Vec<FiniteQg> {
    list_presets().iter().filter(|p| p.kind == "finite").map(|p| preset(&p.name).unwrap()).collect()
}

#[test]
fn every_preset_passes_every_check_quickly() {
    for info in list_presets().iter().filter(|p| p.kind == "finite") {
        let start = Instant::now();
        let q = preset(&info.name).unwrap();
        for chk in q.all_checks().unwrap() {
            assert!(chk.residual < AXIOM_TOL, "{}: {} = {:e}", info.name, chk.axiom, chk.residual);
        }
        assert!(start.elapsed().as_secs_f64() < 1.0, "{} took {:?}", info.name, start.elapsed());
        assert_eq!(Some(q.dim()), info.dim);
        assert_eq!(q.max_irrep_dim(), info.max_irrep_dim);
        assert!(q.is_kac());
    }
}

#[test]
fn coproduct_of_w_is_w13_w23() {
    // (Δ⊗id)W = Σ Δ(u_ij) ⊗ e_ij and W_13 W_23 = Σ u_ik ⊗ u_kj ⊗ e_ij, compared per matrix unit.
    for q in [presets::kac_paljutkin().unwrap(), presets::fun_s3().unwrap(), presets::dual_z(7).unwrap()] {
        let d = q.dim();
        let mut res = 0.0;
        for irr in q.irreps() {
            for i in 0..irr.dim {
                for j in 0..irr.dim {
                    let lhs = q.comult(irr.entry(i, j));
                    let mut rhs = vec![c(0.0, 0.0); d * d];
                    for k in 0..irr.dim {
                        for (p, x) in irr.entry(i, k).iter().enumerate() {
                            for (r, y) in irr.entry(k, j).iter().enumerate() {
                                rhs[p * d + r] += x * y;
                            }
                        }
                    }
                    res += numlin::vec_dist(&lhs, &rhs);
                }
            }
        }
        assert!(res < 1e-9, "{}: {res:e}", q.name());
        assert!(q.w_unitarity_residual().unwrap() < 1e-9);
    }
}

#[test]
fn dual_block_algebras_of_presets() {
    for q in finite_presets().iter().filter(|q| q.dim() <= 16) {
        let dual = DualBlockAlgebra::build(q).unwrap();
        for chk in dual.checks() {
            assert!(chk.residual < AXIOM_TOL, "{}: {}", q.name(), chk.axiom);
        }
        let mut blocks = dual.blocks().to_vec();
        blocks.sort();
        let mut dims: Vec<usize> = q.irreps().iter().map(|i| i.dim).collect();
        dims.sort();
        assert_eq!(blocks, dims);
        assert_eq!(dual.redual_block_pattern().unwrap(), algebra_block_pattern(q).unwrap(), "{}", q.name());
    }
}

#[test]
fn dual_z4_haar_is_character_average() {
    // The Haar state of ℂ[ℤ_4] is the average of the four characters evaluated on λ_g.
    let q = presets::dual_z(4).unwrap();
    let avg: Vec<C64> = (0..4)
        .map(|g| {
            let s: C64 = (0..4).map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k * g) as f64 / 4.0)).sum();
            s / 4.0
        })
        .collect();
    assert!(numlin::max_abs_diff(q.haar_vector(), &avg) < 1e-12);
}

#[test]
fn windows_from_presets() {
    let w = window_preset("free(2)", 2).unwrap();
    assert_eq!(w.len(), 17);
    let z = window_preset("Z(1)", 3).unwrap();
    assert_eq!(z.len(), 7);
    assert!(window_preset("free(4)", 2).is_err());
}

#[test]
fn preset_search_path() {
    let dir = std::env::temp_dir().join(format!("qgwb-preset-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut doc: serde_json::Value =
        serde_json::from_str(&qg_core::doc::to_json(&presets::dual_z(3).unwrap())).unwrap();
    doc["name"] = serde_json::json!("my-z3");
    std::fs::write(dir.join("my-z3.json"), doc.to_string()).unwrap();
    let q = presets::preset_with_search("my-z3", std::slice::from_ref(&dir)).unwrap();
    assert_eq!(q.name(), "my-z3");
    assert!(presets::preset_with_search("absent", std::slice::from_ref(&dir)).is_err());
    std::fs::remove_dir_all(dir).unwrap();
}
