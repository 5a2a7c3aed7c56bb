//! The action `α_U(x) = F(U)*(1⊗x)F(U)` on the algebra generated by the
//! `s(ζ)`, and the experiment exhibiting almost-invariant generators.

use coreps::Corep;
use numlin::{inner, vec_norm, CMatrix, C64};
use serde::Serialize;

use crate::lift::{lift_rep, LiftedRep};
use crate::space::{word_operator, FockOperator, TruncatedFock, INVOLUTION_TOL};
use crate::FockError;

/// Tolerance of the generator intertwining identity and of multiplicativity.
pub const INTERTWINING_TOL: f64 = 1e-9;
/// Tolerance of the vacuum invariance and of the action equation.
pub const INVARIANCE_TOL: f64 = 1e-8;
/// Tolerance on `τ(s(ζ)) = 0` and `‖s(ζ)Ω‖ = 1`.
pub const TRACE_TOL: f64 = 1e-10;

/// `α_U` with `F(U) = Σ_i e_i⊗F_i` and `F(U)* = Σ_j e_j⊗G_j`.
#[derive(Debug, Clone)]
pub struct InducedAction {
    fock: TruncatedFock,
    u: Corep,
    lift: LiftedRep,
    f: Vec<CMatrix>,
    g: Vec<CMatrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InducedActionReport {
    /// `max ‖(ω⊗ι)α(s(ζ)) − s((ω⊗ι)(U*)ζ)‖` over basis `ζ` and coefficient `ω`.
    pub intertwining_residual: f64,
    /// `max_{w,t} |⟨Ω, α(w)_t Ω⟩ − ω_Ω(w) 1_t|`.
    pub invariance_residual: f64,
    /// `max ‖α(xy) − α(x)α(y)‖` over pairs of test words.
    pub multiplicativity_residual: f64,
    /// `‖(Δ⊗ι)α(x) − (ι⊗α)α(x)‖` over the generators.
    pub action_equation_residual: f64,
    pub words: usize,
}

fn nonzero(m: &CMatrix) -> bool {
    m.max_abs() > 0.0
}

impl InducedAction {
    pub fn new(fock: &TruncatedFock, u: &Corep) -> Result<Self, FockError> {
        let lift = lift_rep(fock, u)?;
        let f = lift.corep.u_components()?;
        let g = lift.corep.u_star_components()?;
        Ok(Self { fock: fock.clone(), u: u.clone(), lift, f, g })
    }

    pub fn fock(&self) -> &TruncatedFock {
        &self.fock
    }

    pub fn lift(&self) -> &LiftedRep {
        &self.lift
    }

    pub fn corep(&self) -> &Corep {
        &self.u
    }

    fn qg(&self) -> &qg_core::FiniteQg {
        &self.u.parent().finite().expect("finite parent").qg
    }

    /// Components `X_t` of `α(x) = Σ_t e_t⊗X_t`.
    pub fn apply(&self, x: &CMatrix) -> Vec<CMatrix> {
        let q = self.qg();
        let n = x.rows();
        let xf: Vec<Option<CMatrix>> = self.f.iter().map(|fi| nonzero(fi).then(|| x * fi)).collect();
        let mut out = vec![CMatrix::zeros(n, n); q.dim()];
        for (j, gj) in self.g.iter().enumerate() {
            if !nonzero(gj) {
                continue;
            }
            for (i, xfi) in xf.iter().enumerate() {
                let (terms, Some(xfi)) = (q.mult_terms(j, i), xfi) else { continue };
                if terms.is_empty() {
                    continue;
                }
                let prod = gj * xfi;
                for &(t, w) in terms {
                    out[t].axpy(w, &prod);
                }
            }
        }
        out
    }

    /// `(ω⊗ι)α(x)` for `ω` given by its basis values.
    pub fn slice(&self, omega: &[C64], x: &CMatrix) -> CMatrix {
        let q = self.qg();
        let n = x.rows();
        let mut out = CMatrix::zeros(n, n);
        for (i, fi) in self.f.iter().enumerate() {
            if !nonzero(fi) {
                continue;
            }
            let mut left = CMatrix::zeros(n, n);
            let mut any = false;
            for (j, gj) in self.g.iter().enumerate() {
                let w: C64 = q.mult_terms(j, i).iter().map(|&(t, w)| w * omega[t]).sum();
                if w.norm() > 0.0 && nonzero(gj) {
                    left.axpy(w, gj);
                    any = true;
                }
            }
            if any {
                out += &(&(&left * x) * fi);
            }
        }
        out
    }

    /// Product in `A ⊗ B(F)` of component lists.
    pub fn product(&self, a: &[CMatrix], b: &[CMatrix]) -> Vec<CMatrix> {
        let q = self.qg();
        let n = a[0].rows();
        let mut out = vec![CMatrix::zeros(n, n); q.dim()];
        for (i, ai) in a.iter().enumerate() {
            if !nonzero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let terms = q.mult_terms(i, j);
                if terms.is_empty() || !nonzero(bj) {
                    continue;
                }
                let p = ai * bj;
                for &(t, w) in terms {
                    out[t].axpy(w, &p);
                }
            }
        }
        out
    }

    /// `max ‖(ω_m⊗ι)α(s(ζ)) − s((ω_m⊗ι)(U*)ζ)‖` over coefficient functionals.
    pub fn intertwining_residual(&self, zetas: &[Vec<C64>]) -> Result<f64, FockError> {
        let d = self.qg().dim();
        let mut worst: f64 = 0.0;
        for zeta in zetas {
            let s = self.fock.s_operator(zeta)?;
            let comps = self.apply(&s.matrix);
            for (m, xm) in comps.iter().enumerate() {
                let omega: Vec<C64> = (0..d).map(|t| C64::new(if t == m { 1.0 } else { 0.0 }, 0.0)).collect();
                let moved = self.u.slice_star(&omega)?.matvec(zeta);
                worst = worst.max(xm.dist(&self.fock.s_operator(&moved)?.matrix));
            }
        }
        Ok(worst)
    }

    /// Checks the intertwining identity on `zetas`, vacuum invariance and
    /// multiplicativity on all words in the `s(ζ)` up to half the depth, and
    /// the action equation on the generators.
    pub fn check(&self, zetas: &[Vec<C64>], words: &[Vec<usize>]) -> Result<InducedActionReport, FockError> {
        let depth = self.fock.depth();
        let budget = depth / 2;
        if let Some(w) = words.iter().find(|w| w.len() > budget) {
            return Err(FockError::DepthExceeded { needed: w.len(), budget, depth });
        }
        let q = self.qg();
        let unit = q.unit();
        let gens: Vec<FockOperator> = zetas.iter().map(|z| self.fock.s_operator(z)).collect::<Result<_, _>>()?;
        let intertwining_residual = self.intertwining_residual(zetas)?;
        let omega = self.fock.vacuum();
        let gen_images: Vec<Vec<CMatrix>> = gens.iter().map(|g| self.apply(&g.matrix)).collect();
        let mut invariance_residual: f64 = 0.0;
        let mut multiplicativity_residual: f64 = 0.0;
        for w in words {
            let Some(op) = word_operator(&gens, w) else { continue };
            let image = self.apply(&op.matrix);
            let tau = self.fock.vacuum_expectation(&gens, w)?;
            for (t, xt) in image.iter().enumerate() {
                let v = inner(&omega, &xt.matvec(&omega));
                invariance_residual = invariance_residual.max((v - tau * unit[t]).norm());
            }
            let mut prod = gen_images[w[0]].clone();
            for &l in &w[1..] {
                prod = self.product(&prod, &gen_images[l]);
            }
            for (a, b) in image.iter().zip(&prod) {
                multiplicativity_residual = multiplicativity_residual.max(a.dist(b));
            }
        }
        let mut action_equation_residual: f64 = 0.0;
        for image in &gen_images {
            // (Δ⊗ι)α(x) has (a, b) component Σ_t Δ-coefficient X_t, and
            // (ι⊗α)α(x) has α(X_a)_b.
            let d = q.dim();
            let mut lhs = vec![vec![CMatrix::zeros(image[0].rows(), image[0].rows()); d]; d];
            for (t, xt) in image.iter().enumerate() {
                for &(a, b, w) in q.comult_terms(t) {
                    lhs[a][b].axpy(w, xt);
                }
            }
            for (a, xa) in image.iter().enumerate() {
                let inner_image = self.apply(xa);
                for (b, y) in inner_image.iter().enumerate() {
                    action_equation_residual = action_equation_residual.max(lhs[a][b].dist(y));
                }
            }
        }
        let report = InducedActionReport {
            intertwining_residual,
            invariance_residual,
            multiplicativity_residual,
            action_equation_residual,
            words: words.len(),
        };
        for (what, r, tol) in [
            ("generator intertwining", report.intertwining_residual, INTERTWINING_TOL),
            ("multiplicativity", report.multiplicativity_residual, INTERTWINING_TOL),
            ("vacuum invariance", report.invariance_residual, INVARIANCE_TOL),
            ("action equation", report.action_equation_residual, INVARIANCE_TOL),
        ] {
            if !(r <= tol) {
                return Err(FockError::OracleMismatch(format!("{what} fails (residual {r:.3e})")));
            }
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnesWeissRow {
    pub index: usize,
    /// `|τ(s(ζ))|`.
    pub trace: f64,
    /// `‖s(ζ)Ω‖`.
    pub vacuum_norm: f64,
    /// `δ = ‖(ω⊗ι)(U*)ζ − ζ‖`.
    pub corep_defect: f64,
    /// `‖((ω⊗ι)α(s(ζ)) − s(ζ))Ω‖`, the defect in `L²(τ)`.
    pub action_defect: f64,
    /// Operator norm of `(ω⊗ι)α(s(ζ)) − s(ζ)` on the truncation.
    pub operator_defect: f64,
    /// `‖(ω⊗ι)α(s(ζ)) − s(ζ) − s((ω⊗ι)(U*)ζ − ζ)‖`.
    pub identity_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnesWeissReport {
    pub depth: usize,
    pub base_dim: usize,
    pub q_is_identity: bool,
    pub results: Vec<ConnesWeissRow>,
}

/// For unit vectors `ζ_i = Jζ_i` and a functional `ω` with `ω(1) = 1`,
/// reports `τ(s(ζ_i)) = 0`, `‖s(ζ_i)Ω‖ = 1` and the equality of the action
/// defect of `s(ζ_i)` with the corepresentation defect of `ζ_i`.
pub fn connes_weiss_experiment(
    ia: &InducedAction,
    zetas: &[Vec<C64>],
    omega: &[C64],
) -> Result<ConnesWeissReport, FockError> {
    let f = ia.fock();
    if !f.q_is_identity() {
        return Err(FockError::NotTracial { residual: f.involution().q_defect() });
    }
    let q = ia.qg();
    if omega.len() != q.dim() {
        return Err(FockError::Schema(format!("ω has {} values, algebra has dimension {}", omega.len(), q.dim())));
    }
    let w1: C64 = omega.iter().zip(q.unit()).map(|(a, b)| a * b).sum();
    if (w1 - 1.0).norm() > TRACE_TOL {
        return Err(FockError::Schema(format!("ω(1) = {w1}, expected 1")));
    }
    let slice = ia.corep().slice_star(omega)?;
    let vac = f.vacuum();
    let mut results = Vec::new();
    for (index, zeta) in zetas.iter().enumerate() {
        if (vec_norm(zeta) - 1.0).abs() > TRACE_TOL {
            return Err(FockError::Schema(format!("ζ_{index} is not a unit vector")));
        }
        let jr = numlin::max_abs_diff(&f.involution().apply_j(zeta), zeta);
        if jr > INVOLUTION_TOL {
            return Err(FockError::Schema(format!("ζ_{index} is not J-real ({jr:.3e})")));
        }
        let s = f.s_operator(zeta)?;
        let s_vac = s.apply(&vac);
        let eta: Vec<C64> = slice.matvec(zeta).iter().zip(zeta).map(|(a, b)| a - b).collect();
        let diff = &ia.slice(omega, &s.matrix) - &s.matrix;
        let row = ConnesWeissRow {
            index,
            trace: s_vac[0].norm(),
            vacuum_norm: vec_norm(&s_vac),
            corep_defect: vec_norm(&eta),
            action_defect: vec_norm(&diff.matvec(&vac)),
            operator_defect: diff.op_norm(),
            identity_residual: diff.dist(&f.s_operator(&eta)?.matrix),
        };
        if !(row.trace <= TRACE_TOL) || !((row.vacuum_norm - 1.0).abs() <= TRACE_TOL) {
            return Err(FockError::OracleMismatch(format!("τ(s(ζ_{index})) or ‖s(ζ_{index})Ω‖ off: {row:?}")));
        }
        if !((row.action_defect - row.corep_defect).abs() <= INTERTWINING_TOL)
            || !(row.identity_residual <= INTERTWINING_TOL)
        {
            return Err(FockError::OracleMismatch(format!("action defect differs from corep defect: {row:?}")));
        }
        results.push(row);
    }
    Ok(ConnesWeissReport { depth: f.depth(), base_dim: f.base_dim(), q_is_identity: true, results })
}
