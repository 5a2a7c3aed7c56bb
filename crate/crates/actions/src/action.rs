//! Actions `α: N → A ⊗ N` of finite quantum groups on block algebras.
//!
//! `α` is stored as a `(dim A · dim N) × dim N` matrix: row `k·m + f` of
//! column `g` is the `e_f`-coordinate of the `e_k`-component of `α(e_g)`.

use std::sync::Arc;

use coreps::{Corep, FiniteParent};
use numlin::{c, hermitian_eig, rank, CMatrix, C64};
use qg_core::algebra_wedderburn;
use qg_core::doc::{from_matrix, to_matrix, Num};
use serde::{Deserialize, Serialize};

use crate::block::BlockAlgebra;
use crate::ActionError;

/// Tolerance of the action axioms and of state invariance.
pub const ACTION_TOL: f64 = 1e-9;
/// Smallest admissible eigenvalue of a faithful density matrix.
pub const FAITHFUL_TOL: f64 = 1e-12;

/// Residuals of the action axioms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionResiduals {
    pub multiplicativity: f64,
    pub adjoint: f64,
    pub unitality: f64,
    /// Smallest singular value of `α` relative to the largest.
    pub injectivity: f64,
    /// `(Δ⊗id)α − (id⊗α)α`.
    pub action_equation: f64,
}

/// A validated action, optionally with a faithful invariant state `θ = Tr(ρ ·)`.
#[derive(Debug, Clone)]
pub struct Action {
    parent: Arc<FiniteParent>,
    algebra: BlockAlgebra,
    alpha: CMatrix,
    theta: Option<CMatrix>,
    residuals: ActionResiduals,
}

/// Serialised action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub parent_id: String,
    pub block_pattern: Vec<usize>,
    /// Rows of the `(dim A · dim N) × dim N` matrix of `α`.
    pub alpha: Vec<Vec<Num>>,
    /// Density matrix of `θ` in the block-diagonal realisation.
    #[serde(default)]
    pub theta: Option<Vec<Vec<Num>>>,
}

type Tensor = Vec<Vec<C64>>;

impl Action {
    /// Validates `α` and, when given, the density matrix `ρ` of `θ`.
    pub fn new(
        parent: Arc<FiniteParent>,
        algebra: BlockAlgebra,
        alpha: CMatrix,
        theta: Option<CMatrix>,
    ) -> Result<Self, ActionError> {
        let (d, m) = (parent.qg.dim(), algebra.dim());
        if alpha.rows() != d * m || alpha.cols() != m {
            return Err(ActionError::Schema(format!("α must be a {}×{m} matrix", d * m)));
        }
        let mut a = Self {
            parent,
            algebra,
            alpha,
            theta: None,
            residuals: ActionResiduals {
                multiplicativity: 0.0,
                adjoint: 0.0,
                unitality: 0.0,
                injectivity: 0.0,
                action_equation: 0.0,
            },
        };
        a.residuals = a.compute_residuals();
        let r = a.residuals;
        for (what, residual) in [
            ("α is multiplicative", r.multiplicativity),
            ("α is *-preserving", r.adjoint),
            ("α is unital", r.unitality),
            ("(Δ⊗id)α = (id⊗α)α", r.action_equation),
        ] {
            if !(residual <= ACTION_TOL) {
                return Err(ActionError::NotAnAction { what: what.into(), residual });
            }
        }
        if !(r.injectivity > ACTION_TOL) {
            return Err(ActionError::NotAnAction { what: "α is injective".into(), residual: r.injectivity });
        }
        match theta {
            Some(rho) => a.with_theta(rho),
            None => Ok(a),
        }
    }

    /// Attaches a faithful invariant state, validating it.
    pub fn with_theta(mut self, rho: CMatrix) -> Result<Self, ActionError> {
        let n = self.algebra.size();
        if rho.rows() != n || rho.cols() != n {
            return Err(ActionError::Schema(format!("θ must be a {n}×{n} density matrix")));
        }
        let shape = rho.hermitian_defect().max(self.algebra.off_pattern(&rho)).max((rho.trace() - 1.0).norm());
        if shape > ACTION_TOL {
            return Err(ActionError::Schema(format!(
                "θ must be a block-diagonal Hermitian matrix of trace one (residual {shape:.3e})"
            )));
        }
        let min_eigenvalue = hermitian_eig(&rho.hermitian_part())?.values[0];
        if !(min_eigenvalue > FAITHFUL_TOL) {
            return Err(ActionError::NotFaithful { min_eigenvalue });
        }
        let residual = self.invariance_residual(&rho);
        if !(residual <= ACTION_TOL) {
            return Err(ActionError::NotInvariant { residual });
        }
        self.theta = Some(rho);
        Ok(self)
    }

    /// Attaches the state `θ' = (h⊗θ₀)α` obtained by averaging the
    /// normalised trace `θ₀`. It is invariant by invariance of `h`, and
    /// faithful because `h⊗θ₀` is faithful and `α` injective.
    pub fn with_averaged_state(self) -> Result<Self, ActionError> {
        let rho = self.averaged_state(&self.algebra.normalized_trace());
        self.with_theta(rho)
    }

    pub fn parent(&self) -> &Arc<FiniteParent> {
        &self.parent
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn alpha_matrix(&self) -> &CMatrix {
        &self.alpha
    }

    /// Density matrix of the invariant state, if any.
    pub fn theta(&self) -> Option<&CMatrix> {
        self.theta.as_ref()
    }

    pub fn residuals(&self) -> ActionResiduals {
        self.residuals
    }

    /// `α_k(x)`, the `e_k`-component of `α(x)`.
    pub fn component(&self, k: usize, x: &[C64]) -> Vec<C64> {
        let m = self.algebra.dim();
        (0..m).map(|f| (0..m).map(|g| self.alpha[(k * m + f, g)] * x[g]).sum()).collect()
    }

    /// All components of `α(x)`.
    pub fn apply(&self, x: &[C64]) -> Tensor {
        (0..self.parent.qg.dim()).map(|k| self.component(k, x)).collect()
    }

    /// The linear map `α_k` on `N` as a matrix.
    pub fn component_matrix(&self, k: usize) -> CMatrix {
        let m = self.algebra.dim();
        self.alpha.submatrix(k * m, 0, m, m)
    }

    /// `θ(x) = Tr(ρX)` for a density matrix `ρ`.
    pub fn state_value(&self, rho: &CMatrix, x: &[C64]) -> C64 {
        (rho * &self.algebra.to_matrix(x)).trace()
    }

    /// `max_{x,k} |θ(α_k(x)) − 1_k θ(x)|` over matrix units.
    pub fn invariance_residual(&self, rho: &CMatrix) -> f64 {
        let unit = self.parent.qg.unit();
        let mut worst: f64 = 0.0;
        for f in 0..self.algebra.dim() {
            let x = self.algebra.basis_vector(f);
            let t = self.state_value(rho, &x);
            for (k, comp) in self.apply(&x).iter().enumerate() {
                worst = worst.max((self.state_value(rho, comp) - unit[k] * t).norm());
            }
        }
        worst
    }

    /// Density matrix of `(h⊗θ₀)α`.
    pub fn averaged_state(&self, rho0: &CMatrix) -> CMatrix {
        let h = self.parent.qg.haar_vector();
        let values: Vec<C64> = (0..self.algebra.dim())
            .map(|f| {
                let x = self.algebra.basis_vector(f);
                self.apply(&x).iter().zip(h).map(|(comp, hk)| hk * self.state_value(rho0, comp)).sum()
            })
            .collect();
        density_from_values(&self.algebra, &values)
    }

    fn tensor_mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let q = &self.parent.qg;
        let mut out = vec![vec![c(0.0, 0.0); self.algebra.dim()]; q.dim()];
        for (k, xk) in x.iter().enumerate() {
            if xk.iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            for (l, yl) in y.iter().enumerate() {
                if yl.iter().all(|z| z.norm() == 0.0) {
                    continue;
                }
                let p = self.algebra.mul(xk, yl);
                for &(t, w) in q.mult_terms(k, l) {
                    for (o, v) in out[t].iter_mut().zip(&p) {
                        *o += w * v;
                    }
                }
            }
        }
        out
    }

    fn tensor_star(&self, x: &Tensor) -> Tensor {
        let star = self.parent.qg.star_matrix();
        let d = self.parent.qg.dim();
        let adj: Vec<Vec<C64>> = x.iter().map(|xk| self.algebra.star(xk)).collect();
        (0..d)
            .map(|i| {
                let mut v = vec![c(0.0, 0.0); self.algebra.dim()];
                for (k, a) in adj.iter().enumerate() {
                    let w = star[(i, k)];
                    if w.norm() > 0.0 {
                        for (o, z) in v.iter_mut().zip(a) {
                            *o += w * z;
                        }
                    }
                }
                v
            })
            .collect()
    }

    fn compute_residuals(&self) -> ActionResiduals {
        let q = &self.parent.qg;
        let (d, m) = (q.dim(), self.algebra.dim());
        let dist = |a: &Tensor, b: &Tensor| {
            a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
        };
        let images: Vec<Tensor> = (0..m).map(|f| self.apply(&self.algebra.basis_vector(f))).collect();
        let mut multiplicativity: f64 = 0.0;
        let mut adjoint: f64 = 0.0;
        for f in 0..m {
            let x = self.algebra.basis_vector(f);
            adjoint = adjoint.max(dist(&self.tensor_star(&images[f]), &images[self.algebra.transpose_index(f)]));
            for g in 0..m {
                let y = self.algebra.basis_vector(g);
                let lhs = self.apply(&self.algebra.mul(&x, &y));
                multiplicativity = multiplicativity.max(dist(&lhs, &self.tensor_mul(&images[f], &images[g])));
            }
        }
        let unit_n = self.algebra.unit();
        let one: Tensor = q.unit().iter().map(|&u| unit_n.iter().map(|&v| u * v).collect()).collect();
        let unitality = dist(&self.apply(&unit_n), &one);
        let sv = numlin::svd_jacobi(&self.alpha).singular_values;
        let top = sv.iter().fold(0.0f64, |a, &b| a.max(b));
        let injectivity = if rank(&self.alpha, 1e-10 * top.max(1.0)) == m {
            sv.iter().fold(f64::INFINITY, |a, &b| a.min(b)) / top.max(f64::MIN_POSITIVE)
        } else {
            0.0
        };
        // (Δ⊗id)α(x) and (id⊗α)α(x) as components indexed by (a, b).
        let mut action_equation: f64 = 0.0;
        for image in &images {
            let mut lhs = vec![vec![c(0.0, 0.0); m]; d * d];
            for (k, comp) in image.iter().enumerate() {
                for &(a, b, w) in q.comult_terms(k) {
                    for (o, v) in lhs[a * d + b].iter_mut().zip(comp) {
                        *o += w * v;
                    }
                }
            }
            for (a, comp) in image.iter().enumerate() {
                for (b, inner) in self.apply(comp).iter().enumerate() {
                    let r = lhs[a * d + b].iter().zip(inner).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                    action_equation = action_equation.max(r);
                }
            }
        }
        ActionResiduals { multiplicativity, adjoint, unitality, injectivity, action_equation }
    }

    /// `α(x) = 1⊗x`.
    pub fn trivial(parent: Arc<FiniteParent>, blocks: &[usize]) -> Result<Self, ActionError> {
        let algebra = BlockAlgebra::new(blocks)?;
        let (d, m) = (parent.qg.dim(), algebra.dim());
        let unit = parent.qg.unit().to_vec();
        let alpha = CMatrix::from_fn(d * m, m, |r, g| if r % m == g { unit[r / m] } else { c(0.0, 0.0) });
        let theta = algebra.normalized_trace();
        Self::new(parent, algebra, alpha, Some(theta))
    }

    /// Grading coaction of `ℤ_n` on a block algebra: for the group algebra
    /// of `ℤ_n`, `α(e_ij) = λ_{deg i − deg j} ⊗ e_ij` with one degree per
    /// row of the block-diagonal realisation. This is the dual of the
    /// automorphism `Ad diag(ω^{deg i})`.
    pub fn grading(parent: Arc<FiniteParent>, blocks: &[usize], degrees: &[usize]) -> Result<Self, ActionError> {
        let algebra = BlockAlgebra::new(blocks)?;
        let n = parent.qg.dim();
        if degrees.len() != algebra.size() {
            return Err(ActionError::Schema(format!("{} degrees given, need {}", degrees.len(), algebra.size())));
        }
        let mut offsets = Vec::new();
        let mut o = 0;
        for &b in blocks {
            offsets.push(o);
            o += b;
        }
        let m = algebra.dim();
        let mut alpha = CMatrix::zeros(n * m, m);
        for f in 0..m {
            let (b, i, j) = algebra.split_flat(f);
            let g = (degrees[offsets[b] + i] % n + n - degrees[offsets[b] + j] % n) % n;
            alpha[(g * m + f, f)] = c(1.0, 0.0);
        }
        let theta = algebra.normalized_trace();
        Self::new(parent, algebra, alpha, Some(theta))
    }

    /// The comultiplication `Δ: A → A⊗A` as an action of `A` on itself,
    /// realised through explicit matrix units, with `θ = h`.
    pub fn comultiplication(parent: Arc<FiniteParent>) -> Result<Self, ActionError> {
        let q = &parent.qg;
        let w = algebra_wedderburn(q)?;
        let algebra = BlockAlgebra::new(&w.blocks)?;
        let d = q.dim();
        let mut alpha = CMatrix::zeros(d * d, d);
        for f in 0..d {
            for i in 0..d {
                let x = w.units[(i, f)];
                if x.norm() == 0.0 {
                    continue;
                }
                for &(k, l, v) in q.comult_terms(i) {
                    for g in 0..d {
                        alpha[(k * d + g, f)] += x * v * w.to_blocks[(g, l)];
                    }
                }
            }
        }
        let haar: Vec<C64> = (0..d).map(|f| q.haar(&w.units.column(f))).collect();
        let theta = density_from_values(&algebra, &haar);
        Self::new(parent, algebra, alpha, Some(theta))
    }

    /// `α(x) = V*(1⊗x)V` on `B(K)`, with the normalised trace.
    pub fn adjoint(v: &Corep) -> Result<Self, ActionError> {
        let parent = match v.parent() {
            coreps::CorepParent::Finite(p) => p.clone(),
            coreps::CorepParent::Window(_) => {
                return Err(ActionError::Schema("adjoint actions need a finite parent".into()))
            }
        };
        let q = &parent.qg;
        let k = v.dim();
        let algebra = BlockAlgebra::new(&[k])?;
        let (d, m) = (q.dim(), algebra.dim());
        let vs = v.u_components()?;
        let ws = v.u_star_components()?;
        let mut alpha = CMatrix::zeros(d * m, m);
        for f in 0..m {
            let x = algebra.to_matrix(&algebra.basis_vector(f));
            for (a, wa) in ws.iter().enumerate() {
                let wx = wa * &x;
                for (b, vb) in vs.iter().enumerate() {
                    let terms = q.mult_terms(a, b);
                    if terms.is_empty() {
                        continue;
                    }
                    let y = algebra.from_matrix(&(&wx * vb));
                    for &(t, coef) in terms {
                        for (g, yg) in y.iter().enumerate() {
                            alpha[(t * m + g, f)] += coef * yg;
                        }
                    }
                }
            }
        }
        let theta = algebra.normalized_trace();
        Self::new(parent, algebra, alpha, Some(theta))
    }

    pub fn to_doc(&self) -> ActionDoc {
        ActionDoc {
            parent_id: self.parent.qg.name().to_string(),
            block_pattern: self.algebra.blocks().to_vec(),
            alpha: from_matrix(&self.alpha),
            theta: self.theta.as_ref().map(from_matrix),
        }
    }

    pub fn from_doc(doc: &ActionDoc, parent: Arc<FiniteParent>) -> Result<Self, ActionError> {
        if doc.parent_id != parent.qg.name() {
            return Err(ActionError::Schema(format!(
                "action is for {}, parent is {}",
                doc.parent_id,
                parent.qg.name()
            )));
        }
        let algebra = BlockAlgebra::new(&doc.block_pattern)?;
        let (d, m) = (parent.qg.dim(), algebra.dim());
        if doc.alpha.len() != d * m || doc.alpha.iter().any(|r| r.len() != m) {
            return Err(ActionError::Schema(format!("α must be a {}×{m} matrix", d * m)));
        }
        let alpha = CMatrix::from_fn(d * m, m, |i, j| doc.alpha[i][j].value());
        let theta = match &doc.theta {
            Some(rows) => Some(to_matrix(rows, algebra.size(), "θ")?),
            None => None,
        };
        Self::new(parent, algebra, alpha, theta)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("actions always serialise")
    }

    pub fn from_json(text: &str, parent: Arc<FiniteParent>) -> Result<Self, ActionError> {
        let doc: ActionDoc = serde_json::from_str(text).map_err(|e| ActionError::Schema(e.to_string()))?;
        Self::from_doc(&doc, parent)
    }
}

/// Density matrix `ρ` with `Tr(ρ e_f) = values[f]`.
pub fn density_from_values(algebra: &BlockAlgebra, values: &[C64]) -> CMatrix {
    let mut v = vec![c(0.0, 0.0); algebra.dim()];
    for (f, &x) in values.iter().enumerate() {
        v[algebra.transpose_index(f)] = x;
    }
    algebra.to_matrix(&v)
}
