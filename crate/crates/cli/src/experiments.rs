//! The experiment suites run by scenarios.

use std::f64::consts::PI;
use std::sync::Arc;

use actions::{
    cone_preservation_check, fixed_point_expectation, implement, preset_action, preset_actions, spectral_gap_report,
    v_vbar_implementation_check,
};
use coreps::{all_units, cyclic_generator, kazhdan_gap, Corep, CorepParent, FiniteParent};
use fock::{
    all_words, character_sum, compatible_presets, connes_weiss_experiment, evaluation_state, symmetric_vector,
    InducedAction, Involution, TruncatedFock,
};
use functionals::pd::functional_from_blocks;
use functionals::{
    derivative_recovery, exp_closed, min_gram_eigenvalue, random_state, semigroup_report, Functional, Parent,
};
use genfun::{
    build_v_matrices, check_t_norms, lemma74_experiment, length_ball, schurmann_triple, theorem69_constructor,
    validate_generating, PoissonSequence, ZetaTerm,
};
use numlin::{c, CMatrix, C64};
use qg_core::dense_image::reference_examples;
use qg_core::presets::{preset_with_search, window_preset};
use qg_core::{dense_image_report, load_qg, FiniteQg, GroupDualWindow, SeededRng, WindowGroup};

use crate::report::Checks;
use crate::scenario::{preset_dirs, Params, Scenario};
use crate::RunError;

/// Context handed to every experiment.
pub struct Ctx<'a> {
    pub scenario: &'a Scenario,
    pub params: &'a Params,
    pub seed: u64,
}

impl Ctx<'_> {
    fn finite(&self, default: &str) -> Result<FiniteQg, RunError> {
        match (&self.scenario.document, &self.scenario.preset) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| RunError::Schema(format!("cannot read {}: {e}", path.display())))?;
                Ok(load_qg(&text)?)
            }
            (None, name) => Ok(preset_with_search(name.as_deref().unwrap_or(default), &preset_dirs())?),
        }
    }

    fn window_name<'b>(&'b self, default: &'b str) -> Result<&'b str, RunError> {
        if self.scenario.document.is_some() {
            return Err(RunError::Schema(format!(
                "{} runs on a group window, not a document",
                self.scenario.experiment
            )));
        }
        Ok(self.scenario.preset.as_deref().unwrap_or(default))
    }

    fn is_window(&self) -> bool {
        self.scenario.document.is_none()
            && self
                .scenario
                .preset
                .as_deref()
                .is_some_and(|p| ["free(", "Z(", "cyclic("].iter().any(|s| p.starts_with(s)))
    }
}

/// Default parent label of each experiment.
pub fn default_parent(experiment: &str) -> &'static str {
    match experiment {
        "kazhdan" => "dual-Z(8)",
        "theorem69" => "Z(1)",
        "lemma74" => "free(2)",
        "action_suite" => "preset actions",
        "fock_suite" => "truncated Fock presets",
        "dense_image" => "reference morphisms",
        _ => "kac-paljutkin",
    }
}

pub fn run_experiment(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    match ctx.scenario.experiment.as_str() {
        "axioms" => axioms(ctx, checks),
        "semigroup" => semigroup(ctx, checks),
        "kazhdan" => kazhdan(ctx, checks),
        "v_matrices" => v_matrices(ctx, checks),
        "theorem69" => theorem69(ctx, checks),
        "lemma74" => lemma74(ctx, checks),
        "action_suite" => action_suite(ctx, checks),
        "fock_suite" => fock_suite(ctx, checks),
        "dense_image" => dense_image(checks),
        other => Err(RunError::Schema(format!("unknown experiment {other:?}"))),
    }
}

fn axioms(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    let q = ctx.finite("kac-paljutkin")?;
    checks.section(q.name());
    for a in q.all_checks()? {
        checks.residual(a.axiom, a.residual, 1e-9);
    }
    checks.count("dim", q.dim(), q.dim());
    checks.flag("kac", q.is_kac(), q.is_kac());
    Ok(())
}

fn semigroup(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    let p = ctx.params;
    let scale = p.float("scale", 3.0);
    let times = p.floats("times", &[0.1, 0.5, 1.0]);
    let h = p.float("h", 1e-4);
    if !(h > 0.0) || times.iter().any(|t| !(*t >= 0.0)) {
        return Err(RunError::Schema("h must be positive and times non-negative".into()));
    }
    let parent: Parent = ctx.finite("kac-paljutkin")?.into();
    let mu = random_state(&parent, ctx.seed)?;
    let l = Functional::counit(parent.clone()).combine(c(scale, 0.0), &mu, c(-scale, 0.0))?;
    validate_generating(&l)?;
    checks.section("semigroup");
    let r = semigroup_report(&l, &times)?;
    checks.residual("law_residual", r.law_residual, 1e-9);
    checks.residual("identity_residual", r.identity_residual, 1e-12);
    checks.residual("unit_residual", r.unit_residual, 1e-9);
    checks.at_least("min_gram_eigenvalue", r.min_gram_eigenvalue, 0.0, 1e-9);
    checks.section("derivative");
    let d = derivative_recovery(&l, h)?;
    checks.at_most("forward_error", d.forward_error, d.forward_bound, 0.0);
    checks.residual("richardson_error", d.richardson_error, 1e-5);
    Ok(())
}

fn kazhdan(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    let q = ctx.finite("dual-Z(8)")?;
    let parent: CorepParent = FiniteParent::new(q)?.into();
    let fp = parent.finite()?;
    let blocks = fp.dual.blocks().len();
    let trivial = fp.dual.trivial_block();
    let parts: Vec<Corep> = match ctx.params.text("corep", "nontrivial") {
        "nontrivial" => {
            (0..blocks).filter(|&a| a != trivial).map(|a| Corep::irrep(parent.clone(), a)).collect::<Result<_, _>>()?
        }
        "regular" => (0..blocks).map(|a| Corep::irrep(parent.clone(), a)).collect::<Result<_, _>>()?,
        other => return Err(RunError::Schema(format!("corep must be nontrivial or regular, got {other:?}"))),
    };
    if parts.is_empty() {
        return Err(RunError::Schema("the trivial quantum group has no nontrivial irreps".into()));
    }
    let u = Corep::direct_sum(&parts)?;
    checks.section("kazhdan");
    match ctx.params.text("q", "generator") {
        "generator" => {
            let gen = cyclic_generator(&u)?;
            let gap = kazhdan_gap(&u, &[gen])?;
            checks.near("gap", gap, 2.0 * (PI / blocks as f64).sin(), 1e-9);
        }
        "all_units" => {
            let gap = kazhdan_gap(&u, &all_units(&parent))?;
            checks.above("gap", gap, 0.0, 1e-9);
        }
        other => return Err(RunError::Schema(format!("q must be generator or all_units, got {other:?}"))),
    }
    Ok(())
}

fn v_matrices(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    if ctx.is_window() {
        return v_matrices_window(ctx, checks);
    }
    let q = ctx.finite("kac-paljutkin")?;
    let irreps = q.irreps().len();
    let default: Vec<f64> = (0..irreps).map(|a| a as f64).collect();
    let weights = ctx.params.floats("weights", &default);
    if weights.len() != irreps {
        return Err(RunError::Schema(format!("weights needs {irreps} entries, one per irrep")));
    }
    let dims: Vec<usize> = q.irreps().iter().map(|i| i.dim).collect();
    let blocks: Vec<CMatrix> =
        dims.iter().zip(&weights).map(|(&n, &x)| CMatrix::identity(n).scale(c(x, 0.0))).collect();
    let l = functional_from_blocks(q.into(), &blocks)?;
    let g = validate_generating(&l)?;
    checks.section("generating");
    checks.flag("central", g.central, true);
    checks.flag("s_invariant", g.s_invariant, true);
    let t = schurmann_triple(&g)?;
    let gammas: Vec<usize> = (0..irreps).collect();
    for alpha in 0..irreps {
        for beta in 0..irreps {
            checks.section(format!("alpha={alpha},beta={beta}"));
            for v in build_v_matrices(&g, &t, alpha, beta, &gammas)? {
                let tag = format!("gamma={}", v.gamma);
                checks.residual(&format!("{tag}:hermitian"), v.hermitian_residual, 1e-10);
                checks.residual(&format!("{tag}:structure_constants"), v.route_residual, 1e-10);
                checks.at_least(&format!("{tag}:min_eigenvalue"), v.min_eigenvalue, v.constructive_bound, 1e-9);
            }
        }
    }
    checks.section("t_norms");
    for gamma in 0..irreps {
        checks.residual(&format!("gamma={gamma}"), check_t_norms(&g, &t, gamma)?, 1e-8);
    }
    Ok(())
}

fn v_matrices_window(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    let radius = ctx.params.int("radius", 20);
    let l_max = ctx.params.int("l_max", 10);
    let name = ctx.window_name("Z(1)")?;
    if name != "Z(1)" {
        return Err(RunError::Schema("window V matrices run on Z(1)".into()));
    }
    if l_max > radius / 2 {
        return Err(RunError::Schema(format!("l_max {l_max} needs radius at least {}", 2 * l_max)));
    }
    let w = Arc::new(window_preset(name, radius)?);
    let wc = w.clone();
    let l = Functional::from_fn(Parent::Window(w.clone()), move |g| c(wc.length(g) as f64, 0.0));
    let g = validate_generating(&l)?;
    let t = schurmann_triple(&g)?;
    let gammas: Vec<usize> = (1..=l_max as i64)
        .map(|m| w.from_integer(m).ok_or_else(|| RunError::Schema(format!("{m} outside the window"))))
        .collect::<Result<_, _>>()?;
    let e = w.identity();
    checks.section("alpha=e,beta=e");
    for (i, v) in build_v_matrices(&g, &t, e, e, &gammas)?.iter().enumerate() {
        let l = (i + 1) as f64;
        checks.near(&format!("l={}:min_eigenvalue", i + 1), v.min_eigenvalue, l, 0.0);
        checks.residual(&format!("l={}:hermitian", i + 1), v.hermitian_residual, 1e-10);
    }
    Ok(())
}

fn theorem69(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    let name = ctx.window_name("Z(1)")?;
    if name != "Z(1)" {
        return Err(RunError::Schema("the Poisson sequence lives on Z(1)".into()));
    }
    let radius = ctx.params.int("radius", 1 << 20);
    let terms = ctx.params.int("terms", 1_200_000);
    let cap = ctx.params.int("cap", 5_000_000);
    let eps = ctx.params.float("eps", 0.5);
    if !(eps > 0.0 && eps < 1.0) || terms == 0 {
        return Err(RunError::Schema("eps must lie in (0, 1) and terms be positive".into()));
    }
    let w = Arc::new(GroupDualWindow::build_with_cap(WindowGroup::Lattice { rank: 1 }, radius, cap)?);
    let seq = PoissonSequence { window: w.clone(), terms };
    let k_sets = length_ball(&w);
    let out = theorem69_constructor(&seq, eps, &k_sets, w.len())?;
    checks.section("stages");
    checks.at_least("completed", out.stages.len() as f64, 8.0, 0.0);
    for s in &out.stages {
        checks.section(format!("l={}", s.l));
        checks.at_least("witness_value", s.witness_value, s.bound, 0.0);
        checks.at_least("witness_deviation", s.witness_deviation, eps, 0.0);
        checks.at_most("small_sup", s.small_sup, eps / 4f64.powi(s.l as i32), 0.0);
    }
    let evals: Vec<Arc<GroupDualWindow>> =
        (1..=out.stages.len()).map(|l| window_preset("Z(1)", 2 * l).map(Arc::new)).collect::<Result<_, _>>()?;
    let gens = out.validate_on(&seq, &w, &evals)?;
    checks.section("validation");
    checks.count("generating_windows", gens.len(), out.stages.len());
    Ok(())
}

fn lemma74(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    let name = ctx.window_name("free(2)")?;
    if !name.starts_with("free(") {
        return Err(RunError::Schema("lemma74 runs on a free group window".into()));
    }
    let radius = ctx.params.int("radius", 6);
    let t = ctx.params.float("t", 1.0);
    let l_max = ctx.params.int("l_max", 3);
    if !(t > 0.0) || l_max == 0 || 2 * l_max > radius {
        return Err(RunError::Schema("need t > 0 and 1 ≤ l_max ≤ radius/2".into()));
    }
    let w = Arc::new(window_preset(name, radius)?);
    let wc = w.clone();
    let l = Functional::from_fn(Parent::Window(w.clone()), move |g| c(wc.length(g) as f64, 0.0));
    validate_generating(&l)?;
    checks.section("schoenberg");
    for s in [0.1, 1.0, 10.0] {
        let (min, _) = min_gram_eigenvalue(&exp_closed(&l, s)?)?;
        checks.at_least(&format!("t={s}:min_gram_eigenvalue"), min, 0.0, 1e-9);
    }
    let e = w.identity();
    let zeta = vec![ZetaTerm { a: e, b: e, weight: c(1.0, 0.0) }];
    let gammas: Vec<usize> = (1..=l_max)
        .map(|k| w.find(&vec![1i64; k]).ok_or_else(|| RunError::Schema(format!("g^{k} outside the window"))))
        .collect::<Result<_, _>>()?;
    let rows = lemma74_experiment(&l, t, &zeta, &gammas)?;
    let mut prev = f64::NEG_INFINITY;
    for (i, row) in rows.iter().enumerate() {
        let k = (i + 1) as f64;
        checks.section(format!("l={}", i + 1));
        checks.near("bound", row.bound, 1.0 - 2.0 * (-2.0 * t * k).exp(), 1e-12);
        checks.at_least("exact", row.exact, row.bound, 1e-12);
        checks.above("increase", row.bound, prev, 0.0);
        prev = row.bound;
    }
    Ok(())
}

fn action_suite(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    checks.section("grading-dual-z2-m2");
    let imp = implement(&preset_action("grading-dual-z2-m2")?)?;
    checks.residual("unitarity", imp.unitarity_residual, 1e-9);
    let fp = fixed_point_expectation(&imp)?;
    let alg = imp.action().algebra();
    let diag_defect = (0..alg.dim())
        .map(|f| {
            let x = alg.basis_vector(f);
            let xm = alg.to_matrix(&x);
            let compressed = CMatrix::from_fn(2, 2, |i, j| if i == j { xm[(i, j)] } else { c(0.0, 0.0) });
            alg.to_matrix(&fp.apply(&x)).dist(&compressed)
        })
        .fold(0.0, f64::max);
    checks.residual("expectation_vs_diagonal", diag_defect, 1e-10);
    checks.residual("bimodule", fp.report.bimodule_residual, 1e-9);
    let q = &imp.action().parent().qg;
    let mut rng = SeededRng::new(ctx.seed);
    let xis = vec![q.unit().to_vec(), rng.complex_vec(q.dim())];
    checks.flag("cone_preserved", cone_preservation_check(&imp, &xis)?.preserved, true);

    for (name, alpha) in [("fun-S3", 2usize), ("kac-paljutkin", 4)] {
        checks.section(format!("v-vbar:{name}:irrep={alpha}"));
        let p = FiniteParent::new(preset_with_search(name, &[])?)?;
        let v = Corep::irrep(CorepParent::Finite(p), alpha)?;
        checks.count("dim", v.dim(), 2);
        let r = v_vbar_implementation_check(&v)?;
        checks.flag("equivalent", r.equivalent, true);
        checks.residual("intertwiner", r.intertwiner_residual, 1e-8);
    }

    for (name, action) in preset_actions()? {
        checks.section(name);
        let imp = implement(&action)?;
        checks.residual("unitarity", imp.unitarity_residual, 1e-9);
        checks.residual("implementation", imp.implementation_residual, 1e-9);
        let fp = fixed_point_expectation(&imp)?;
        checks.residual("bimodule", fp.report.bimodule_residual, 1e-9);
        checks.residual("idempotency", fp.report.idempotency, 1e-9);
        let r = spectral_gap_report(&imp, None)?;
        checks.flag("gap_indicators_consistent", r.consistent, true);
        checks.flag("spectral_gap", r.spectral_gap, r.p_in_image);
        let q = &imp.action().parent().qg;
        let xis = vec![q.unit().to_vec(), rng.complex_vec(q.dim())];
        checks.flag("cone_preserved", cone_preservation_check(&imp, &xis)?.preserved, true);
    }
    Ok(())
}

fn unit_vector(k: usize, a: usize) -> Vec<C64> {
    (0..k).map(|i| c(if i == a { 1.0 } else { 0.0 }, 0.0)).collect()
}

fn fock_suite(ctx: &Ctx, checks: &mut Checks) -> Result<(), RunError> {
    let depth = ctx.params.int("depth", 8);
    let n = ctx.params.int("cyclic_order", 32);
    if depth < 2 || n < 2 {
        return Err(RunError::Schema("depth and cyclic_order must be at least 2".into()));
    }
    let f = TruncatedFock::new(2, depth)?;
    let catalan =
        |m: usize| -> f64 { (0..m).fold(1.0, |acc, i| acc * (2 * m - i) as f64 / (m - i) as f64) / (m + 1) as f64 };
    for (label, zeta) in [("e1", vec![c(1.0, 0.0), c(0.0, 0.0)]), ("rotated", vec![c(0.6, 0.0), c(-0.8, 0.0)])] {
        checks.section(format!("moments:{label}"));
        let s = f.s_operator(&zeta)?;
        let m = f.vacuum_moments(&s, depth)?;
        for k in (2..=depth).step_by(2) {
            checks.near(&format!("m{k}"), m[k].re, catalan(k / 2), 1e-12);
            checks.residual(&format!("m{k}:imag"), m[k].im, 1e-12);
        }
    }
    checks.section("traciality");
    let gens = vec![f.s_operator(&unit_vector(2, 0))?, f.s_operator(&unit_vector(2, 1))?];
    checks.residual("two_generator_words", f.trace_check(&gens, &all_words(2, depth / 2))?, 1e-9);

    for cand in compatible_presets()? {
        checks.section(format!("induced:{}", cand.name));
        let k = cand.corep.dim();
        let d = (2..16).take_while(|&m| (0..=m).map(|i| k.pow(i as u32)).sum::<usize>() <= 64).last().unwrap_or(2);
        let f = cand.fock(d)?;
        let ia = InducedAction::new(&f, &cand.corep)?;
        let zetas: Vec<Vec<C64>> = (0..k.min(2)).map(|a| unit_vector(k, a)).collect();
        let r = ia.check(&zetas, &all_words(zetas.len(), f.depth() / 2))?;
        checks.residual("invariance", r.invariance_residual, 1e-8);
        checks.residual("intertwining", r.intertwining_residual, 1e-9);
    }

    let parent = CorepParent::Finite(FiniteParent::new(preset_with_search(&format!("dual-Z({n})"), &[])?)?);
    let (u, j) = character_sum(&parent)?;
    let f = TruncatedFock::with_involution(n, 1, Involution::new(j, CMatrix::identity(n))?)?;
    let ia = InducedAction::new(&f, &u)?;
    let mut ks: Vec<usize> = std::iter::successors(Some(n / 2), |&k| (k > 1).then_some(k / 2)).collect();
    ks.push(0);
    let zetas: Vec<Vec<C64>> = ks.iter().map(|&k| symmetric_vector(n, k)).collect();
    let report = connes_weiss_experiment(&ia, &zetas, &evaluation_state(n, 1))?;
    for (row, &k) in report.results.iter().zip(&ks) {
        checks.section(format!("connes-weiss:dual-Z({n}):k={k}"));
        checks.residual("trace", row.trace, 1e-10);
        checks.near("vacuum_norm", row.vacuum_norm, 1.0, 1e-10);
        checks.near("corep_defect", row.corep_defect, 2.0 * (PI * k as f64 / n as f64).sin(), 1e-12);
        checks.near("action_defect", row.action_defect, row.corep_defect, 1e-9);
        checks.at_most("operator_defect", row.operator_defect, 2.0 * row.corep_defect, 1e-9);
    }
    Ok(())
}

fn dense_image(checks: &mut Checks) -> Result<(), RunError> {
    let expected = [true, true, false];
    for ((name, g, h, pi), want) in reference_examples()?.into_iter().zip(expected) {
        checks.section(name);
        let r = dense_image_report(&pi, &g, &h)?;
        checks.residual("morphism", r.morphism_residual, 1e-9);
        checks.flag("conditions_agree", r.consistent(), true);
        checks.flag("dense", r.dense(), want);
        for (i, rank) in r.ranks.iter().enumerate() {
            checks.at_most(&format!("rank_condition_{}", i + 1), *rank as f64, r.target_rank as f64, 0.0);
        }
    }
    Ok(())
}
