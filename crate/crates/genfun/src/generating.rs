//! Validation of generating functionals.

use functionals::pd::scalarity_residual;
use functionals::{window_gram, Functional, Parent};
use numlin::{c, hermitian_eig, null_space, CMatrix, C64};

use crate::GenFunError;

/// Tolerance for `L(1) = 0`, self-adjointness, centrality and `S`-invariance.
pub const GEN_TOL: f64 = 1e-10;
/// Tolerance for conditional negative definiteness, relative to the Gram scale.
pub const CND_TOL: f64 = 1e-9;

/// A validated generating functional.
#[derive(Debug, Clone)]
pub struct GenFunctional {
    base: Functional,
    /// `|L(1)|`.
    pub unit_residual: f64,
    /// `max |L(a*) − conj L(a)|` over the basis.
    pub selfadjoint_residual: f64,
    /// Largest eigenvalue of `L(a*b)` on `ker ε` (non-positive up to tolerance).
    pub max_cnd_value: f64,
    pub central: bool,
    pub s_invariant: bool,
    /// `c_α` with `L^α = c_α I`, present for central `L`; indexed by irrep,
    /// or by window element on a window.
    c_table: Option<Vec<f64>>,
}

impl GenFunctional {
    pub fn base(&self) -> &Functional {
        &self.base
    }

    pub fn parent(&self) -> &Parent {
        self.base.parent()
    }

    pub fn c_table(&self) -> Option<&[f64]> {
        self.c_table.as_deref()
    }

    /// `c_α`, failing with `NotCentral` for a non-central `L`.
    pub fn c(&self, alpha: usize) -> Result<f64, GenFunError> {
        let table = self.c_table.as_ref().ok_or(GenFunError::NotCentral { residual: self.scalarity_residual() })?;
        table.get(alpha).copied().ok_or_else(|| GenFunError::Schema(format!("no irrep {alpha}")))
    }

    fn scalarity_residual(&self) -> f64 {
        match self.parent() {
            Parent::Finite(_) => scalarity_residual(&self.base.blocks()),
            Parent::Window(_) => 0.0,
        }
    }

    pub fn require_central(&self) -> Result<(), GenFunError> {
        if self.central {
            Ok(())
        } else {
            Err(GenFunError::NotCentral { residual: self.scalarity_residual() })
        }
    }

    pub fn require_s_invariant(&self) -> Result<(), GenFunError> {
        if self.s_invariant {
            Ok(())
        } else {
            let residual = numlin::max_abs_diff(self.base.compose_antipode().coeffs(), self.base.coeffs());
            Err(GenFunError::NotSInvariant { residual })
        }
    }
}

/// The form `L(a*b)` on `ker ε`, with the map from its coordinates back to
/// the parent's basis (finite) or window elements (window).
fn cnd_form(l: &Functional) -> Result<(CMatrix, CMatrix, f64), GenFunError> {
    match l.parent() {
        Parent::Finite(q) => {
            let counit = CMatrix::new(1, q.dim(), q.counit_vector().to_vec());
            let x = null_space(&counit, 1e-12);
            let g = q.gram(l.coeffs());
            let scale = g.max_abs().max(1.0);
            Ok((&(&x.adjoint() * &g) * &x, x, scale))
        }
        Parent::Window(w) => {
            let g = window_gram(w, |k| l.at(k))?;
            let ball = w.ball(w.radius() / 2);
            let n = ball.len();
            let p = CMatrix::from_fn(n, n, |i, j| c(if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64, 0.0));
            let embed = CMatrix::from_fn(w.len(), n, |g, k| if ball[k] == g { c(1.0, 0.0) } else { c(0.0, 0.0) });
            let scale = g.max_abs().max(1.0);
            Ok((&(&p * &g) * &p, &embed * &p, scale))
        }
    }
}

/// Checks `L(1) = 0`, `L(a*) = conj L(a)` and conditional negative
/// definiteness, and computes the centrality and `S`-invariance flags.
///
/// On a window every check runs on the half-radius ball, where all
/// quotients `g⁻¹h` stay in the window.
pub fn validate_generating(l: &Functional) -> Result<GenFunctional, GenFunError> {
    let unit_value = l.value_at_unit();
    if unit_value.norm() > GEN_TOL {
        return Err(GenFunError::NotVanishing { value: unit_value });
    }
    let selfadjoint_residual = numlin::max_abs_diff(l.conjugate().coeffs(), l.coeffs());
    if selfadjoint_residual > GEN_TOL {
        return Err(GenFunError::NotSelfadjoint { residual: selfadjoint_residual });
    }
    let (form, embed, scale) = cnd_form(l)?;
    let max_cnd_value = if form.rows() == 0 {
        0.0
    } else {
        let eig = hermitian_eig(&form.hermitian_part())?;
        let top = eig.values.len() - 1;
        let value = eig.values[top];
        if value > CND_TOL * scale {
            let v = eig.vectors.column(top);
            return Err(GenFunError::NotCND { value, witness: embed.matvec(&v) });
        }
        value
    };
    let s_invariant = numlin::max_abs_diff(l.compose_antipode().coeffs(), l.coeffs()) <= GEN_TOL;
    let (central, c_table) = match l.parent() {
        Parent::Finite(_) => {
            let blocks = l.blocks();
            if scalarity_residual(&blocks) <= GEN_TOL {
                (true, Some(blocks.iter().map(|b| b[(0, 0)].re).collect()))
            } else {
                (false, None)
            }
        }
        Parent::Window(_) => (true, Some(l.coeffs().iter().map(|z| z.re).collect())),
    };
    Ok(GenFunctional {
        base: l.clone(),
        unit_residual: unit_value.norm(),
        selfadjoint_residual,
        max_cnd_value,
        central,
        s_invariant,
        c_table,
    })
}

/// The value of the form `L(x*x)` at a witness, for reporting.
pub fn form_value(l: &Functional, x: &[C64]) -> Result<f64, GenFunError> {
    match l.parent() {
        Parent::Finite(q) => {
            let g = q.gram(l.coeffs());
            Ok(numlin::inner(x, &g.matvec(x)).re)
        }
        Parent::Window(w) => {
            let ball = w.ball(w.radius() / 2);
            let mut s = C64::new(0.0, 0.0);
            for &g in &ball {
                for &h in &ball {
                    s += x[g].conj() * x[h] * l.at(w.quotient_in_window(g, h)?);
                }
            }
            Ok(s.re)
        }
    }
}
