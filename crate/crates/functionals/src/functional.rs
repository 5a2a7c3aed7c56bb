//! Linear functionals on a finite quantum group or on a group window.

use std::sync::Arc;

use numlin::{c, CMatrix, C64};
use qg_core::doc::{to_complex_vec, to_num_vec, Num};
use qg_core::{FiniteQg, GroupDualWindow};
use serde::{Deserialize, Serialize};

use crate::FunctionalError;

/// The object a functional is defined on.
#[derive(Debug, Clone)]
pub enum Parent {
    /// A finite quantum group; functionals are indexed by its basis.
    Finite(Arc<FiniteQg>),
    /// A window in a discrete group; functionals are functions on its elements.
    Window(Arc<GroupDualWindow>),
}

impl Parent {
    pub fn id(&self) -> String {
        match self {
            Parent::Finite(q) => q.name().to_string(),
            Parent::Window(w) => format!("{} r={}", w.group().label(), w.radius()),
        }
    }

    /// Number of coefficients of a functional.
    pub fn dim(&self) -> usize {
        match self {
            Parent::Finite(q) => q.dim(),
            Parent::Window(w) => w.len(),
        }
    }

    pub fn finite(&self) -> Option<&FiniteQg> {
        match self {
            Parent::Finite(q) => Some(q),
            Parent::Window(_) => None,
        }
    }

    pub fn window(&self) -> Option<&GroupDualWindow> {
        match self {
            Parent::Finite(_) => None,
            Parent::Window(w) => Some(w),
        }
    }

    fn same(&self, other: &Parent) -> bool {
        match (self, other) {
            (Parent::Finite(a), Parent::Finite(b)) => Arc::ptr_eq(a, b) || (a.name() == b.name() && a.dim() == b.dim()),
            (Parent::Window(a), Parent::Window(b)) => {
                Arc::ptr_eq(a, b) || (a.group() == b.group() && a.radius() == b.radius())
            }
            _ => false,
        }
    }
}

impl From<FiniteQg> for Parent {
    fn from(q: FiniteQg) -> Self {
        Parent::Finite(Arc::new(q))
    }
}

impl From<GroupDualWindow> for Parent {
    fn from(w: GroupDualWindow) -> Self {
        Parent::Window(Arc::new(w))
    }
}

/// A linear functional `μ`, stored by its values on the parent's basis.
///
/// For a window the values are `μ(λ_γ)`, a function on the elements.
#[derive(Debug, Clone)]
pub struct Functional {
    parent: Parent,
    coeffs: Vec<C64>,
}

/// Serialised form: `{parent_id, coeffs}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalDoc {
    pub parent_id: String,
    pub coeffs: Vec<Num>,
}

impl Functional {
    pub fn new(parent: Parent, coeffs: Vec<C64>) -> Result<Self, FunctionalError> {
        let expected = parent.dim();
        if coeffs.len() != expected {
            return Err(FunctionalError::Length { got: coeffs.len(), expected });
        }
        Ok(Self { parent, coeffs })
    }

    /// Functional on a window given by a function of the element index.
    pub fn from_fn(parent: Parent, f: impl Fn(usize) -> C64) -> Self {
        let coeffs = (0..parent.dim()).map(f).collect();
        Self { parent, coeffs }
    }

    /// Functional with prescribed blocks `μ^α = (μ(u^α_ij))`.
    pub fn from_blocks(parent: Parent, blocks: &[CMatrix]) -> Result<Self, FunctionalError> {
        let q = parent.finite().ok_or(FunctionalError::NeedsFiniteParent)?;
        if blocks.len() != q.irreps().len() {
            return Err(FunctionalError::Length { got: blocks.len(), expected: q.irreps().len() });
        }
        let mut flat = vec![c(0.0, 0.0); q.dim()];
        for (a, (m, irr)) in blocks.iter().zip(q.irreps()).enumerate() {
            if m.rows() != irr.dim || m.cols() != irr.dim {
                return Err(FunctionalError::Schema(format!("block {a} must be {0}×{0}", irr.dim)));
            }
            for i in 0..irr.dim {
                for j in 0..irr.dim {
                    flat[q.flat_index(a, i, j)] = m[(i, j)];
                }
            }
        }
        // μ_k = Σ_g (B⁻¹)[g][k] μ(u_g).
        let inv = q.ubasis_inv();
        let coeffs = (0..q.dim()).map(|k| (0..q.dim()).map(|g| inv[(g, k)] * flat[g]).sum()).collect();
        Ok(Self { parent: parent.clone(), coeffs })
    }

    /// The counit `ε`, the convolution unit.
    pub fn counit(parent: Parent) -> Self {
        match &parent {
            Parent::Finite(q) => {
                let coeffs = q.counit_vector().to_vec();
                Self { parent, coeffs }
            }
            Parent::Window(_) => Self::from_fn(parent, |_| c(1.0, 0.0)),
        }
    }

    /// The Haar state of a finite parent.
    pub fn haar(parent: Parent) -> Result<Self, FunctionalError> {
        let q = parent.finite().ok_or(FunctionalError::NeedsFiniteParent)?;
        let coeffs = q.haar_vector().to_vec();
        Ok(Self { parent, coeffs })
    }

    pub fn zero(parent: Parent) -> Self {
        Self::from_fn(parent, |_| c(0.0, 0.0))
    }

    pub fn parent(&self) -> &Parent {
        &self.parent
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Value at a single window element or basis vector.
    pub fn at(&self, i: usize) -> C64 {
        self.coeffs[i]
    }

    /// `μ(a)` for an algebra element in basis coordinates.
    pub fn eval(&self, a: &[C64]) -> C64 {
        self.coeffs.iter().zip(a).map(|(m, x)| m * x).sum()
    }

    /// `μ(1)`.
    pub fn value_at_unit(&self) -> C64 {
        match &self.parent {
            Parent::Finite(q) => self.eval(q.unit()),
            Parent::Window(w) => self.coeffs[w.identity()],
        }
    }

    /// Blocks `μ^α_ij = μ(u^α_ij)`; for windows one 1×1 block per element.
    pub fn blocks(&self) -> Vec<CMatrix> {
        match &self.parent {
            Parent::Finite(q) => q
                .irreps()
                .iter()
                .map(|irr| CMatrix::from_fn(irr.dim, irr.dim, |i, j| self.eval(irr.entry(i, j))))
                .collect(),
            Parent::Window(_) => self.coeffs.iter().map(|&z| CMatrix::new(1, 1, vec![z])).collect(),
        }
    }

    /// Largest discrepancy between the coefficient vector and the block form.
    pub fn block_consistency_residual(&self) -> f64 {
        match &self.parent {
            Parent::Finite(_) => {
                let back = Self::from_blocks(self.parent.clone(), &self.blocks()).expect("blocks have parent shape");
                numlin::max_abs_diff(&back.coeffs, &self.coeffs)
            }
            Parent::Window(_) => 0.0,
        }
    }

    fn check_parent(&self, other: &Functional) -> Result<(), FunctionalError> {
        if self.parent.same(&other.parent) {
            Ok(())
        } else {
            Err(FunctionalError::ParentMismatch(self.parent.id(), other.parent.id()))
        }
    }

    /// `(μ⋆ν)(a) = (μ⊗ν)Δ(a)`; pointwise product on a window.
    pub fn convolve(&self, other: &Functional) -> Result<Functional, FunctionalError> {
        self.check_parent(other)?;
        let coeffs = match &self.parent {
            Parent::Finite(q) => (0..q.dim())
                .map(|i| q.comult_terms(i).iter().map(|&(j, k, v)| v * self.coeffs[j] * other.coeffs[k]).sum())
                .collect(),
            Parent::Window(_) => self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect(),
        };
        Ok(Self { parent: self.parent.clone(), coeffs })
    }

    /// `s μ + t ν`.
    pub fn combine(&self, s: C64, other: &Functional, t: C64) -> Result<Functional, FunctionalError> {
        self.check_parent(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| s * a + t * b).collect();
        Ok(Self { parent: self.parent.clone(), coeffs })
    }

    pub fn scale(&self, s: C64) -> Functional {
        Self { parent: self.parent.clone(), coeffs: self.coeffs.iter().map(|z| s * z).collect() }
    }

    /// `μ̄(a) = conj μ(a*)`.
    pub fn conjugate(&self) -> Functional {
        let coeffs = match &self.parent {
            Parent::Finite(q) => {
                let s = q.star_matrix();
                (0..q.dim()).map(|i| (0..q.dim()).map(|k| s[(k, i)] * self.coeffs[k]).sum::<C64>().conj()).collect()
            }
            Parent::Window(w) => (0..w.len()).map(|g| self.coeffs[w.inverse(g)].conj()).collect(),
        };
        Self { parent: self.parent.clone(), coeffs }
    }

    /// `μ^♯ = μ̄ ∘ S`, i.e. `a ↦ conj μ(S(a)*)`; its blocks are `(μ^α)*` in the Kac case.
    pub fn sharp(&self) -> Functional {
        let coeffs = match &self.parent {
            Parent::Finite(q) => {
                let conj = self.conjugate();
                let s = q.antipode_matrix();
                (0..q.dim()).map(|i| (0..q.dim()).map(|k| s[(k, i)] * conj.coeffs[k]).sum()).collect()
            }
            Parent::Window(_) => self.coeffs.iter().map(|z| z.conj()).collect(),
        };
        Self { parent: self.parent.clone(), coeffs }
    }

    /// `μ ∘ S`.
    pub fn compose_antipode(&self) -> Functional {
        let coeffs = match &self.parent {
            Parent::Finite(q) => {
                let s = q.antipode_matrix();
                (0..q.dim()).map(|i| (0..q.dim()).map(|k| s[(k, i)] * self.coeffs[k]).sum()).collect()
            }
            Parent::Window(w) => (0..w.len()).map(|g| self.coeffs[w.inverse(g)]).collect(),
        };
        Self { parent: self.parent.clone(), coeffs }
    }

    /// `max_α ‖μ^α‖` (operator norm of blocks; sup norm on a window).
    pub fn block_norm(&self) -> f64 {
        match &self.parent {
            Parent::Finite(_) => self.blocks().iter().map(|b| b.op_norm()).fold(0.0, f64::max),
            Parent::Window(_) => self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max),
        }
    }

    /// `max_α ‖μ^α − ν^α‖`.
    pub fn block_distance(&self, other: &Functional) -> Result<f64, FunctionalError> {
        Ok(self.combine(c(1.0, 0.0), other, c(-1.0, 0.0))?.block_norm())
    }

    pub fn to_doc(&self) -> FunctionalDoc {
        FunctionalDoc { parent_id: self.parent.id(), coeffs: to_num_vec(&self.coeffs) }
    }

    /// Loads a serialised functional onto `parent`, checking the identifier.
    pub fn from_doc(doc: &FunctionalDoc, parent: Parent) -> Result<Self, FunctionalError> {
        if doc.parent_id != parent.id() {
            return Err(FunctionalError::ParentMismatch(doc.parent_id.clone(), parent.id()));
        }
        Self::new(parent, to_complex_vec(&doc.coeffs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("functionals always serialise")
    }

    pub fn from_json(text: &str, parent: Parent) -> Result<Self, FunctionalError> {
        let doc: FunctionalDoc = serde_json::from_str(text).map_err(|e| FunctionalError::Schema(e.to_string()))?;
        Self::from_doc(&doc, parent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qg_core::presets;

    fn kp() -> Parent {
        presets::kac_paljutkin().unwrap().into()
    }

    #[test]
    fn blocks_round_trip() {
        let p = kp();
        let mu = Functional::new(p.clone(), (0..8).map(|k| c(k as f64, 1.0 - k as f64)).collect()).unwrap();
        assert!(mu.block_consistency_residual() < 1e-12);
    }

    #[test]
    fn counit_has_identity_blocks_and_is_unit() {
        let p = kp();
        let eps = Functional::counit(p.clone());
        for b in eps.blocks() {
            assert!(b.dist(&CMatrix::identity(b.rows())) < 1e-12);
        }
        let mu = Functional::new(p, (0..8).map(|k| c(0.3 * k as f64, -0.1)).collect()).unwrap();
        assert!(numlin::max_abs_diff(eps.convolve(&mu).unwrap().coeffs(), mu.coeffs()) < 1e-12);
        assert!(numlin::max_abs_diff(mu.convolve(&eps).unwrap().coeffs(), mu.coeffs()) < 1e-12);
    }

    #[test]
    fn dual_z3_evaluation_squares() {
        // Evaluation at g ∈ ℤ_3 on the function algebra: μ = δ_g-point evaluation of C(ℤ_3).
        let p: Parent = presets::fun_z(3).unwrap().into();
        let eval_at = |g: usize| Functional::from_fn(p.clone(), |k| if k == g { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let mu = eval_at(1);
        let sq = mu.convolve(&mu).unwrap();
        assert!(numlin::max_abs_diff(sq.coeffs(), eval_at(2).coeffs()) < 1e-12);
        // Its character triple on the irreps is (1, ω, ω̄).
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let blocks: Vec<C64> = mu.blocks().iter().map(|b| b[(0, 0)]).collect();
        assert!(numlin::max_abs_diff(&blocks, &[c(1.0, 0.0), w, w.conj()]) < 1e-12);
    }

    #[test]
    fn window_convolution_is_pointwise() {
        let p: Parent = presets::window_preset("free(2)", 2).unwrap().into();
        let f = Functional::from_fn(p.clone(), |g| c(g as f64, 1.0));
        let h = Functional::from_fn(p, |g| c(1.0, -(g as f64)));
        let fh = f.convolve(&h).unwrap();
        for g in 0..17 {
            assert!((fh.at(g) - f.at(g) * h.at(g)).norm() < 1e-15);
        }
    }

    #[test]
    fn parent_mismatch() {
        let a = Functional::counit(kp());
        let b = Functional::counit(presets::dual_z(2).unwrap().into());
        assert!(matches!(a.convolve(&b), Err(FunctionalError::ParentMismatch(_, _))));
        assert!(matches!(Functional::new(kp(), vec![]), Err(FunctionalError::Length { .. })));
    }

    #[test]
    fn json_round_trip() {
        let p = kp();
        let mu = Functional::haar(p.clone()).unwrap();
        let back = Functional::from_json(&mu.to_json(), p).unwrap();
        assert_eq!(back.coeffs(), mu.coeffs());
        assert!(Functional::from_json(&mu.to_json(), presets::dual_z(8).unwrap().into()).is_err());
    }

    #[test]
    fn sharp_has_adjoint_blocks() {
        let p = kp();
        let mu = Functional::new(p, (0..8).map(|k| c(0.2 * k as f64, 0.7 - 0.1 * k as f64)).collect()).unwrap();
        for (a, b) in mu.sharp().blocks().iter().zip(mu.blocks()) {
            assert!(a.dist(&b.adjoint()) < 1e-12);
        }
    }
}
