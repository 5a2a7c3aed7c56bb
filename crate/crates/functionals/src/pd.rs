//! Positive-definite elements and the transforms `Re` and `exp(· − 1)`.
//!
//! A state `μ` determines the tuple `a^α = μ^α` of matrices. This keeps
//! products in order: the tuple of `μ⋆ν` is the blockwise product `a b`.

use numlin::{c, expm, CMatrix};
use qg_core::QgError;

use crate::positivity::{is_state, min_gram_eigenvalue, POSITIVITY_TOL};
use crate::semigroup::exp_star_series;
use crate::{Functional, FunctionalError, Parent};

/// Absolute threshold for declaring a block scalar.
pub const CENTRAL_TOL: f64 = 1e-10;
/// Agreement required between the blockwise and series routes.
pub const ROUTE_TOL: f64 = 1e-9;

/// A normalised positive-definite element with the state it comes from.
#[derive(Debug, Clone)]
pub struct PdElement {
    pub blocks: Vec<CMatrix>,
    /// Every block is a scalar multiple of the identity.
    pub central: bool,
    pub functional: Functional,
}

impl PdElement {
    fn from_parts(blocks: Vec<CMatrix>, functional: Functional) -> Self {
        let central = scalarity_residual(&blocks) <= CENTRAL_TOL;
        Self { blocks, central, functional }
    }

    /// Blockwise product `a b`.
    pub fn block_product(&self, other: &PdElement) -> Vec<CMatrix> {
        self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect()
    }

    /// Largest blockwise distance to another tuple of the same shape.
    pub fn distance_to(&self, other: &[CMatrix]) -> f64 {
        self.blocks.iter().zip(other).map(|(a, b)| a.dist(b)).fold(0.0, f64::max)
    }

    /// Largest Hermitian defect over the blocks.
    pub fn self_adjointness_defect(&self) -> f64 {
        self.blocks.iter().map(|b| b.hermitian_defect()).fold(0.0, f64::max)
    }
}

/// Largest distance of a block from the scalar matrix with the same trace.
pub fn scalarity_residual(blocks: &[CMatrix]) -> f64 {
    blocks
        .iter()
        .map(|b| {
            let n = b.rows();
            let s = b.trace() / n as f64;
            b.dist(&CMatrix::identity(n).scale(s))
        })
        .fold(0.0, f64::max)
}

/// The positive-definite element of a state.
pub fn pd_element(mu: &Functional) -> Result<PdElement, FunctionalError> {
    if !is_state(mu, POSITIVITY_TOL)? {
        let (min, _) = min_gram_eigenvalue(mu)?;
        return Err(FunctionalError::NotAState(format!(
            "μ(1) = {:.3e}, minimum Gram eigenvalue {min:.3e}",
            mu.value_at_unit()
        )));
    }
    Ok(PdElement::from_parts(mu.blocks(), mu.clone()))
}

/// `Re(a) = (a + a*)/2`, whose state is `(μ + μ^♯)/2`.
pub fn re_transform(a: &PdElement) -> Result<PdElement, FunctionalError> {
    let blocks: Vec<CMatrix> = a.blocks.iter().map(|b| b.hermitian_part()).collect();
    let half = c(0.5, 0.0);
    let functional = a.functional.combine(half, &a.functional.sharp(), half)?;
    let out = PdElement::from_parts(blocks, functional);
    let mismatch = out.distance_to(&out.functional.blocks());
    if mismatch > ROUTE_TOL {
        return Err(QgError::OracleMismatch(format!("Re(a) blocks differ from (μ + μ♯)/2 by {mismatch:.3e}")).into());
    }
    let (min, defect) = min_gram_eigenvalue(&out.functional)?;
    if min < -POSITIVITY_TOL || defect > POSITIVITY_TOL {
        return Err(FunctionalError::PositivityLost { min_eigenvalue: min });
    }
    Ok(out)
}

/// `exp(a − 1)` blockwise, whose state is `exp_⋆(μ − ε)`.
///
/// Both routes are computed and must agree to [`ROUTE_TOL`].
pub fn exp_transform(a: &PdElement) -> Result<PdElement, FunctionalError> {
    let defect = a.self_adjointness_defect();
    if defect > CENTRAL_TOL {
        return Err(FunctionalError::NotAState(format!("element is not self-adjoint (defect {defect:.3e})")));
    }
    let blocks = a
        .blocks
        .iter()
        .map(|b| expm(&(&b.hermitian_part() - &CMatrix::identity(b.rows()))))
        .collect::<Result<Vec<_>, _>>()?;
    let parent = a.functional.parent().clone();
    let shifted = a.functional.combine(c(1.0, 0.0), &Functional::counit(parent.clone()), c(-1.0, 0.0))?;
    let series = exp_star_series(&shifted)?;
    let closed = functional_from_blocks(parent, &blocks)?;
    let residual = series.block_distance(&closed)?;
    if !(residual <= ROUTE_TOL) {
        return Err(FunctionalError::SeriesDivergence { residual });
    }
    Ok(PdElement::from_parts(blocks, closed))
}

/// Functional with the given blocks; on a window the blocks are the 1×1 values.
pub fn functional_from_blocks(parent: Parent, blocks: &[CMatrix]) -> Result<Functional, FunctionalError> {
    match parent {
        Parent::Finite(_) => Functional::from_blocks(parent, blocks),
        Parent::Window(_) => Functional::new(parent, blocks.iter().map(|b| b[(0, 0)]).collect()),
    }
}

/// `max_α ‖a^α − I‖` over all blocks.
pub fn gauge_norm(a: &PdElement) -> f64 {
    gauge_over(a, 0..a.blocks.len())
}

/// `max_{α∈F} ‖a^α − I‖` over a finite set `F` of block indices.
///
/// A proxy for strict convergence to `1`, which has no canonical
/// finite-window quantification.
pub fn gauge_strict(a: &PdElement, window: &[usize]) -> f64 {
    gauge_over(a, window.iter().copied())
}

fn gauge_over(a: &PdElement, indices: impl Iterator<Item = usize>) -> f64 {
    indices
        .map(|k| {
            let b = &a.blocks[k];
            (b - &CMatrix::identity(b.rows())).op_norm()
        })
        .fold(0.0, f64::max)
}

/// One member of a gauge family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugePoint {
    pub n: usize,
    pub strict: f64,
    pub norm: f64,
}

/// Gauges of `a_n(γ) = e^{−|γ|/n}` on a window, with the strict gauge over
/// the ball of radius `strict_radius`.
///
/// As `n` grows the strict gauge tends to 0, while on a large window the
/// norm gauge stays near `1 − e^{−r/n}`.
pub fn gauge_family(parent: &Parent, strict_radius: usize, ns: &[usize]) -> Result<Vec<GaugePoint>, FunctionalError> {
    let w = parent.window().ok_or_else(|| FunctionalError::Schema("gauge families live on windows".into()))?;
    let f = w.ball(strict_radius);
    ns.iter()
        .map(|&n| {
            let mu = Functional::from_fn(parent.clone(), |g| c((-(w.length(g) as f64) / n as f64).exp(), 0.0));
            let a = pd_element(&mu)?;
            Ok(GaugePoint { n, strict: gauge_strict(&a, &f), norm: gauge_norm(&a) })
        })
        .collect()
}
