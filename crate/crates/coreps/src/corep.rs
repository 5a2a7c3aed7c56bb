//! Corepresentations stored as representations `φ` of the dual algebra.
//!
//! For a finite parent, `φ(e^α_ij)` is kept for every matrix unit and the
//! unitary `U = Σ u^α_ij ⊗ φ(e^α_ij)` is assembled on demand in the basis of
//! the algebra: `U = Σ_i e_i ⊗ U_i`. For a window, `φ(γ)` is a unitary per
//! element, multiplicative wherever the product stays in the window.

use std::sync::Arc;

use numlin::{c, CMatrix, C64};
use qg_core::doc::{from_matrix, to_matrix, Num};
use qg_core::{DualBlockAlgebra, FiniteQg, GroupDualWindow};
use serde::{Deserialize, Serialize};

use crate::CorepError;

/// Tolerance for the representation and corepresentation invariants.
pub const COREP_TOL: f64 = 1e-9;

/// A finite quantum group together with its validated dual.
#[derive(Debug, Clone)]
pub struct FiniteParent {
    pub qg: FiniteQg,
    pub dual: DualBlockAlgebra,
}

impl FiniteParent {
    pub fn new(qg: FiniteQg) -> Result<Arc<Self>, CorepError> {
        let dual = DualBlockAlgebra::build(&qg)?;
        Ok(Arc::new(Self { qg, dual }))
    }
}

/// Where a corepresentation lives.
#[derive(Debug, Clone)]
pub enum CorepParent {
    Finite(Arc<FiniteParent>),
    Window(Arc<GroupDualWindow>),
}

impl CorepParent {
    pub fn id(&self) -> String {
        match self {
            CorepParent::Finite(p) => p.qg.name().to_string(),
            CorepParent::Window(w) => format!("{} r={}", w.group().label(), w.radius()),
        }
    }

    /// Number of stored `φ` matrices.
    pub fn len(&self) -> usize {
        match self {
            CorepParent::Finite(p) => p.qg.dim(),
            CorepParent::Window(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn finite(&self) -> Result<&FiniteParent, CorepError> {
        match self {
            CorepParent::Finite(p) => Ok(p),
            CorepParent::Window(_) => Err(CorepError::NeedsFiniteParent),
        }
    }

    /// Counit `ε̂` of each stored dual element.
    pub fn counit_values(&self) -> Vec<C64> {
        match self {
            CorepParent::Finite(p) => p.dual.counit_vector().to_vec(),
            CorepParent::Window(w) => vec![c(1.0, 0.0); w.len()],
        }
    }

    pub(crate) fn same(&self, other: &CorepParent) -> bool {
        match (self, other) {
            (CorepParent::Finite(a), CorepParent::Finite(b)) => {
                Arc::ptr_eq(a, b) || (a.qg.name() == b.qg.name() && a.qg.dim() == b.qg.dim())
            }
            (CorepParent::Window(a), CorepParent::Window(b)) => {
                Arc::ptr_eq(a, b) || (a.group() == b.group() && a.radius() == b.radius())
            }
            _ => false,
        }
    }
}

impl From<Arc<FiniteParent>> for CorepParent {
    fn from(p: Arc<FiniteParent>) -> Self {
        CorepParent::Finite(p)
    }
}

impl From<GroupDualWindow> for CorepParent {
    fn from(w: GroupDualWindow) -> Self {
        CorepParent::Window(Arc::new(w))
    }
}

/// A unitary corepresentation on `ℂ^dim`.
#[derive(Debug, Clone)]
pub struct Corep {
    parent: CorepParent,
    dim: usize,
    phi: Vec<CMatrix>,
}

/// Residuals of the corepresentation invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorepResiduals {
    /// Matrix-unit relations, or multiplicativity on a window.
    pub multiplicativity: f64,
    pub unitality: f64,
    pub adjoint: f64,
    /// `‖U*U − 1‖` and `‖UU* − 1‖`.
    pub unitarity: f64,
    /// `‖(Δ⊗id)U − U_13 U_23‖`.
    pub corep_identity: f64,
}

impl CorepResiduals {
    pub fn max(&self) -> f64 {
        self.multiplicativity.max(self.unitality).max(self.adjoint).max(self.unitarity).max(self.corep_identity)
    }
}

/// Serialised form: one `dim×dim` matrix per matrix unit, grouped by irrep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorepDoc {
    pub parent_id: String,
    pub space_dim: usize,
    /// `blocks[α][i][j]` is `φ(e^α_ij)` as rows of numbers.
    pub blocks: Vec<Vec<Vec<Vec<Vec<Num>>>>>,
}

impl Corep {
    /// Validated corepresentation from the matrices `φ(e_g)`.
    pub fn from_phi(parent: CorepParent, dim: usize, phi: Vec<CMatrix>) -> Result<Self, CorepError> {
        let u = Self::from_phi_unchecked(parent, dim, phi)?;
        u.validate()?;
        Ok(u)
    }

    pub(crate) fn from_phi_unchecked(parent: CorepParent, dim: usize, phi: Vec<CMatrix>) -> Result<Self, CorepError> {
        if phi.len() != parent.len() {
            return Err(CorepError::Schema(format!("{} matrices given, parent needs {}", phi.len(), parent.len())));
        }
        if phi.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(CorepError::Schema(format!("every φ matrix must be {dim}×{dim}")));
        }
        Ok(Self { parent, dim, phi })
    }

    /// Corepresentation from the components `U_i` of `U = Σ_i e_i ⊗ U_i`.
    pub fn from_u_components(parent: CorepParent, dim: usize, comps: &[CMatrix]) -> Result<Self, CorepError> {
        let p = parent.finite()?;
        let d = p.qg.dim();
        if comps.len() != d {
            return Err(CorepError::Schema(format!("{} components given, algebra has dimension {d}", comps.len())));
        }
        let binv = p.qg.ubasis_inv();
        let phi = (0..d)
            .map(|g| {
                let mut m = CMatrix::zeros(dim, dim);
                for (i, ui) in comps.iter().enumerate() {
                    let w = binv[(g, i)];
                    if w.norm() > 0.0 {
                        m.axpy(w, ui);
                    }
                }
                m
            })
            .collect();
        Self::from_phi(parent, dim, phi)
    }

    /// `k` copies of the trivial corepresentation.
    pub fn trivial(parent: CorepParent, k: usize) -> Self {
        let phi = parent.counit_values().into_iter().map(|e| CMatrix::identity(k).scale(e)).collect();
        Self { parent, dim: k, phi }
    }

    /// The irreducible corepresentation `u^α` on `ℂ^{n_α}`.
    pub fn irrep(parent: CorepParent, alpha: usize) -> Result<Self, CorepError> {
        let p = parent.finite()?;
        let n = *p.dual.blocks().get(alpha).ok_or_else(|| CorepError::Schema(format!("no irrep {alpha}")))?;
        let phi = (0..p.qg.dim())
            .map(|g| {
                let (b, i, j) = p.dual.split_flat(g);
                let mut m = CMatrix::zeros(n, n);
                if b == alpha {
                    m[(i, j)] = c(1.0, 0.0);
                }
                m
            })
            .collect();
        Ok(Self { parent, dim: n, phi })
    }

    /// Left regular corepresentation on `ℂ^d`, `φ(x) = L_x` on the dual with
    /// orthonormal matrix units.
    pub fn regular(parent: CorepParent) -> Result<Self, CorepError> {
        let p = parent.finite()?;
        let d = p.qg.dim();
        let phi = (0..d)
            .map(|g| {
                let (a, i, j) = p.dual.split_flat(g);
                let n = p.dual.blocks()[a];
                let mut m = CMatrix::zeros(d, d);
                for l in 0..n {
                    m[(p.dual.flat_index(a, i, l), p.dual.flat_index(a, j, l))] = c(1.0, 0.0);
                }
                m
            })
            .collect();
        Ok(Self { parent, dim: d, phi })
    }

    /// One-dimensional corepresentation of a window from a character.
    pub fn window_character(parent: CorepParent, chi: impl Fn(usize) -> C64) -> Result<Self, CorepError> {
        if !matches!(parent, CorepParent::Window(_)) {
            return Err(CorepError::Schema("characters are given on windows".into()));
        }
        let phi = (0..parent.len()).map(|g| CMatrix::new(1, 1, vec![chi(g)])).collect();
        Self::from_phi(parent, 1, phi)
    }

    /// Direct sum of corepresentations on the same parent.
    pub fn direct_sum(parts: &[Corep]) -> Result<Self, CorepError> {
        let first = parts.first().ok_or_else(|| CorepError::Schema("empty direct sum".into()))?;
        for p in parts {
            first.check_parent(p)?;
        }
        let phi = (0..first.phi.len())
            .map(|g| CMatrix::direct_sum(&parts.iter().map(|p| p.phi[g].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(Self { parent: first.parent.clone(), dim: parts.iter().map(|p| p.dim).sum(), phi })
    }

    /// Unitary change of basis `φ ↦ V φ V*`.
    pub fn conjugate_by(&self, v: &CMatrix) -> Result<Self, CorepError> {
        let residual = v.unitarity_defect();
        if v.rows() != self.dim || !(residual <= COREP_TOL) {
            return Err(CorepError::NotUnitary { residual });
        }
        let vt = v.adjoint();
        let phi = self.phi.iter().map(|m| &(v * m) * &vt).collect();
        Ok(Self { parent: self.parent.clone(), dim: self.dim, phi })
    }

    pub fn parent(&self) -> &CorepParent {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `φ(e_g)`, or `φ(γ)` on a window.
    pub fn phi(&self, g: usize) -> &CMatrix {
        &self.phi[g]
    }

    pub fn phis(&self) -> &[CMatrix] {
        &self.phi
    }

    /// `φ(x)` for a dual element in matrix-unit (or window-element) coordinates.
    pub fn phi_of(&self, x: &[C64]) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (g, &v) in x.iter().enumerate() {
            if v.norm() > 0.0 {
                m.axpy(v, &self.phi[g]);
            }
        }
        m
    }

    /// `ε̂(x)`.
    pub fn counit_of(&self, x: &[C64]) -> C64 {
        self.parent.counit_values().iter().zip(x).map(|(e, v)| e * v).sum()
    }

    pub(crate) fn check_parent(&self, other: &Corep) -> Result<(), CorepError> {
        if self.parent.same(&other.parent) {
            Ok(())
        } else {
            Err(CorepError::ParentMismatch(self.parent.id(), other.parent.id()))
        }
    }

    /// Components `U_i = Σ_g B[i][g] φ(e_g)` of `U = Σ_i e_i ⊗ U_i`.
    pub fn u_components(&self) -> Result<Vec<CMatrix>, CorepError> {
        let p = self.parent.finite()?;
        let b = p.qg.ubasis();
        let d = p.qg.dim();
        Ok((0..d)
            .map(|i| {
                let mut m = CMatrix::zeros(self.dim, self.dim);
                for g in 0..d {
                    let w = b[(i, g)];
                    if w.norm() > 0.0 {
                        m.axpy(w, &self.phi[g]);
                    }
                }
                m
            })
            .collect())
    }

    /// Components of `U* = Σ_k e_k ⊗ Σ_i Star[k][i] U_i†`.
    pub fn u_star_components(&self) -> Result<Vec<CMatrix>, CorepError> {
        let p = self.parent.finite()?;
        let u = self.u_components()?;
        let star = p.qg.star_matrix();
        let d = p.qg.dim();
        let adj: Vec<CMatrix> = u.iter().map(|m| m.adjoint()).collect();
        Ok((0..d)
            .map(|k| {
                let mut m = CMatrix::zeros(self.dim, self.dim);
                for (i, a) in adj.iter().enumerate() {
                    let w = star[(k, i)];
                    if w.norm() > 0.0 {
                        m.axpy(w, a);
                    }
                }
                m
            })
            .collect())
    }

    /// Slice `(ω⊗id)(U) = Σ_i ω(e_i) U_i` for a functional given by its basis values.
    pub fn slice(&self, omega: &[C64]) -> Result<CMatrix, CorepError> {
        Ok(weighted_sum(&self.u_components()?, omega, self.dim))
    }

    /// Slice `(ω⊗id)(U*)`.
    pub fn slice_star(&self, omega: &[C64]) -> Result<CMatrix, CorepError> {
        Ok(weighted_sum(&self.u_star_components()?, omega, self.dim))
    }

    /// Residuals of every corepresentation invariant.
    pub fn residuals(&self) -> Result<CorepResiduals, CorepError> {
        match &self.parent {
            CorepParent::Finite(p) => Ok(self.finite_residuals(p)),
            CorepParent::Window(w) => self.window_residuals(w),
        }
    }

    fn finite_residuals(&self, p: &FiniteParent) -> CorepResiduals {
        let d = p.qg.dim();
        let n = self.dim;
        let dual = &p.dual;
        let mut mult: f64 = 0.0;
        for g in 0..d {
            let (a, i, j) = dual.split_flat(g);
            for h in 0..d {
                let (b, k, l) = dual.split_flat(h);
                let prod = &self.phi[g] * &self.phi[h];
                let r = if a == b && j == k { prod.dist(&self.phi[dual.flat_index(a, i, l)]) } else { prod.max_abs() };
                mult = mult.max(r);
            }
        }
        let mut sum = CMatrix::zeros(n, n);
        for (a, &na) in dual.blocks().iter().enumerate() {
            for i in 0..na {
                sum += &self.phi[dual.flat_index(a, i, i)];
            }
        }
        let unitality = sum.dist(&CMatrix::identity(n));
        let adjoint =
            (0..d).map(|g| self.phi[g].adjoint().dist(&self.phi[dual.transpose_index(g)])).fold(0.0, f64::max);
        let u = self.u_components().expect("finite parent");
        let us = self.u_star_components().expect("finite parent");
        let mut left = vec![CMatrix::zeros(n, n); d];
        let mut right = vec![CMatrix::zeros(n, n); d];
        for i in 0..d {
            for j in 0..d {
                for &(k, v) in p.qg.mult_terms(i, j) {
                    left[k].axpy(v, &(&us[i] * &u[j]));
                    right[k].axpy(v, &(&u[i] * &us[j]));
                }
            }
        }
        let unit = p.qg.unit();
        let mut unitarity: f64 = 0.0;
        for k in 0..d {
            let target = CMatrix::identity(n).scale(unit[k]);
            unitarity = unitarity.max(left[k].dist(&target)).max(right[k].dist(&target));
        }
        // (Δ⊗id)U against U_13 U_23, component (j, k).
        let mut corep: f64 = 0.0;
        let mut lhs = vec![CMatrix::zeros(n, n); d * d];
        for i in 0..d {
            for &(j, k, v) in p.qg.comult_terms(i) {
                lhs[j * d + k].axpy(v, &u[i]);
            }
        }
        for j in 0..d {
            for k in 0..d {
                corep = corep.max(lhs[j * d + k].dist(&(&u[j] * &u[k])));
            }
        }
        CorepResiduals { multiplicativity: mult, unitality, adjoint, unitarity, corep_identity: corep }
    }

    fn window_residuals(&self, w: &GroupDualWindow) -> Result<CorepResiduals, CorepError> {
        let n = self.dim;
        let unitality = self.phi[w.identity()].dist(&CMatrix::identity(n));
        let unitarity = self.phi.iter().map(|m| m.unitarity_defect()).fold(0.0, f64::max);
        let adjoint = (0..w.len()).map(|g| self.phi[g].adjoint().dist(&self.phi[w.inverse(g)])).fold(0.0, f64::max);
        let ball = w.ball(w.radius() / 2);
        let mut mult: f64 = 0.0;
        for &g in &ball {
            for &h in &ball {
                let gh = w.product_in_window(g, h)?;
                mult = mult.max((&self.phi[g] * &self.phi[h]).dist(&self.phi[gh]));
            }
        }
        // Δ(λ_γ) = λ_γ ⊗ λ_γ, so the corepresentation identity is multiplicativity.
        Ok(CorepResiduals { multiplicativity: mult, unitality, adjoint, unitarity, corep_identity: mult })
    }

    /// Fails unless every invariant holds to [`COREP_TOL`].
    pub fn validate(&self) -> Result<CorepResiduals, CorepError> {
        let r = self.residuals()?;
        let named = [
            ("matrix-unit relations", r.multiplicativity),
            ("unitality", r.unitality),
            ("adjoint compatibility", r.adjoint),
        ];
        for (what, residual) in named {
            if !(residual <= COREP_TOL) {
                return Err(CorepError::NotARepresentation { what: what.into(), residual });
            }
        }
        if !(r.unitarity <= COREP_TOL) {
            return Err(CorepError::NotUnitary { residual: r.unitarity });
        }
        if !(r.corep_identity <= COREP_TOL) {
            return Err(CorepError::NotARepresentation {
                what: "(Δ⊗id)U = U_13 U_23".into(),
                residual: r.corep_identity,
            });
        }
        Ok(r)
    }

    pub fn to_doc(&self) -> Result<CorepDoc, CorepError> {
        let p = self.parent.finite()?;
        let blocks = p
            .dual
            .blocks()
            .iter()
            .enumerate()
            .map(|(a, &n)| {
                (0..n).map(|i| (0..n).map(|j| from_matrix(&self.phi[p.dual.flat_index(a, i, j)])).collect()).collect()
            })
            .collect();
        Ok(CorepDoc { parent_id: self.parent.id(), space_dim: self.dim, blocks })
    }

    pub fn from_doc(doc: &CorepDoc, parent: CorepParent) -> Result<Self, CorepError> {
        if doc.parent_id != parent.id() {
            return Err(CorepError::ParentMismatch(doc.parent_id.clone(), parent.id()));
        }
        let p = parent.finite()?;
        let dims = p.dual.blocks();
        if doc.blocks.len() != dims.len() {
            return Err(CorepError::Schema(format!("{} irreps given, parent has {}", doc.blocks.len(), dims.len())));
        }
        let mut phi = vec![CMatrix::zeros(0, 0); p.qg.dim()];
        for (a, (block, &n)) in doc.blocks.iter().zip(dims).enumerate() {
            if block.len() != n || block.iter().any(|r| r.len() != n) {
                return Err(CorepError::Schema(format!("irrep {a} needs {n}×{n} matrix units")));
            }
            for i in 0..n {
                for j in 0..n {
                    phi[p.dual.flat_index(a, i, j)] = to_matrix(&block[i][j], doc.space_dim, "φ(e_ij)")?;
                }
            }
        }
        Self::from_phi(parent, doc.space_dim, phi)
    }

    pub fn to_json(&self) -> Result<String, CorepError> {
        Ok(serde_json::to_string(&self.to_doc()?).expect("corepresentations always serialise"))
    }

    pub fn from_json(text: &str, parent: CorepParent) -> Result<Self, CorepError> {
        let doc: CorepDoc = serde_json::from_str(text).map_err(|e| CorepError::Schema(e.to_string()))?;
        Self::from_doc(&doc, parent)
    }
}

pub(crate) fn weighted_sum(mats: &[CMatrix], w: &[C64], n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for (a, &x) in mats.iter().zip(w) {
        if x.norm() > 0.0 {
            m.axpy(x, a);
        }
    }
    m
}
