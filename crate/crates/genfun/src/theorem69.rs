//! Construction of a central strongly unbounded generating functional
//! `L = Σ_l 2^l (ε̂ − μ_l)` from central positive-definite elements that
//! converge to `1` strictly but not in norm.

use std::sync::Arc;

use functionals::{Functional, Parent};
use numlin::c;
use qg_core::GroupDualWindow;
use serde::Serialize;

use crate::generating::{validate_generating, GenFunctional};
use crate::GenFunError;

/// Largest stage index; weights `2^l` are tracked by their exponent `l`.
pub const MAX_STAGES: usize = 40;

/// A finite sequence `a_1, …, a_len` of central normalised positive-definite
/// elements, `a_k^α = λ_k(α) I`.
pub trait CentralPdSequence {
    /// Number of terms.
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// `‖I − a_k^α‖ = |1 − λ_k(α)|` for `k ≥ 1`.
    fn deviation(&self, k: usize, alpha: usize) -> f64;
}

/// `a_k(m) = e^{−|m|/k}` on `ℤ`, indexed by window elements of a `Z(1)` window.
#[derive(Debug, Clone)]
pub struct PoissonSequence {
    pub window: Arc<GroupDualWindow>,
    pub terms: usize,
}

impl CentralPdSequence for PoissonSequence {
    fn len(&self) -> usize {
        self.terms
    }

    fn deviation(&self, k: usize, alpha: usize) -> f64 {
        -(-(self.window.length(alpha) as f64) / k as f64).exp_m1()
    }
}

/// A sequence given by a closure `(k, α) ↦ λ_k(α)`.
pub struct FnSequence<F: Fn(usize, usize) -> f64> {
    pub terms: usize,
    pub lambda: F,
}

impl<F: Fn(usize, usize) -> f64> CentralPdSequence for FnSequence<F> {
    fn len(&self) -> usize {
        self.terms
    }

    fn deviation(&self, k: usize, alpha: usize) -> f64 {
        (1.0 - (self.lambda)(k, alpha)).abs()
    }
}

/// One completed stage of the selection.
#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub l: usize,
    /// Selected index `k_l` into the sequence.
    pub k: usize,
    /// Witness `α_l` with `‖I − a_{k_l}^{α_l}‖ ≥ ε`.
    pub witness: usize,
    pub witness_deviation: f64,
    /// `sup_{α∈K_l} ‖I − a_{k_l}^α‖`, at most `ε/4^l`.
    pub small_sup: f64,
    /// `‖L^{α_l}‖` of the final series.
    pub witness_value: f64,
    /// `2^l ε`.
    pub bound: f64,
}

/// Output of the constructor.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem69 {
    pub eps: f64,
    pub stages: Vec<Stage>,
    /// Why selection stopped after the last completed stage.
    pub stop_reason: String,
    #[serde(skip)]
    weights: Vec<(usize, usize)>,
}

impl Theorem69 {
    /// `L^α = Σ_l 2^l ‖I − a_{k_l}^α‖`.
    pub fn l_value(&self, seq: &dyn CentralPdSequence, alpha: usize) -> f64 {
        self.weights.iter().map(|&(l, k)| (2.0f64).powi(l as i32) * seq.deviation(k, alpha)).sum()
    }

    /// The functional on an evaluation window, mapping its elements into the
    /// sequence's index set by group key.
    pub fn on_window(
        &self,
        seq: &dyn CentralPdSequence,
        index: &GroupDualWindow,
        eval: Arc<GroupDualWindow>,
    ) -> Result<Functional, GenFunError> {
        let mut values = Vec::with_capacity(eval.len());
        for g in 0..eval.len() {
            let alpha = index.find(&eval.key(g)).ok_or_else(|| {
                GenFunError::Schema(format!("evaluation element {} outside the index window", eval.label(g)))
            })?;
            let v = self.l_value(seq, alpha);
            if !v.is_finite() || v > f64::MAX / 4.0 {
                return Err(GenFunError::StageOverflow { stage: self.stages.len() });
            }
            values.push(c(v, 0.0));
        }
        Ok(Functional::new(Parent::Window(eval), values)?)
    }

    /// Validates `L` as a generating functional on each evaluation window.
    pub fn validate_on(
        &self,
        seq: &dyn CentralPdSequence,
        index: &GroupDualWindow,
        windows: &[Arc<GroupDualWindow>],
    ) -> Result<Vec<GenFunctional>, GenFunError> {
        windows.iter().map(|w| validate_generating(&self.on_window(seq, index, w.clone())?)).collect()
    }
}

/// Selects `k_1 < k_2 < …` and witnesses `α_l` with
///
/// (pointbig) `‖I − a_{k_l}^{α_l}‖ ≥ ε` for some `α_l < search_len`, and
/// (small) `sup_{α∈K_l} ‖I − a_{k_l}^α‖ ≤ ε/4^l`,
///
/// scanning the sequence once. Stops when the sequence is exhausted or at
/// stage [`MAX_STAGES`]; fails if not even the first stage completes.
pub fn theorem69_constructor(
    seq: &dyn CentralPdSequence,
    eps: f64,
    k_sets: &dyn Fn(usize) -> Vec<usize>,
    search_len: usize,
) -> Result<Theorem69, GenFunError> {
    if !(eps > 0.0) {
        return Err(GenFunError::Schema("eps must be positive".into()));
    }
    let mut stages: Vec<Stage> = Vec::new();
    let mut weights = Vec::new();
    let mut k = 1usize;
    let mut small_seen = false;
    let stop_reason;
    'stages: loop {
        let l = stages.len() + 1;
        if l > MAX_STAGES {
            stop_reason = format!("stage cap {MAX_STAGES} reached");
            break;
        }
        let threshold = eps / 4f64.powi(l as i32);
        let k_set = k_sets(l);
        small_seen = false;
        while k <= seq.len() {
            let small_sup = k_set.iter().map(|&a| seq.deviation(k, a)).fold(0.0, f64::max);
            if small_sup <= threshold {
                small_seen = true;
                let witness = (0..search_len).find(|&a| seq.deviation(k, a) >= eps);
                if let Some(witness) = witness {
                    let witness_deviation = seq.deviation(k, witness);
                    weights.push((l, k));
                    stages.push(Stage {
                        l,
                        k,
                        witness,
                        witness_deviation,
                        small_sup,
                        witness_value: 0.0,
                        bound: (2.0f64).powi(l as i32) * eps,
                    });
                    k += 1;
                    continue 'stages;
                }
            }
            k += 1;
        }
        stop_reason = if small_seen {
            format!("stage {l}: (pointbig) fails for every remaining term satisfying (small)")
        } else {
            format!("stage {l}: (small) fails for every remaining term")
        };
        break;
    }
    if stages.is_empty() {
        let condition = if small_seen { "pointbig" } else { "small" };
        return Err(GenFunError::SelectionFailed { condition, detail: stop_reason });
    }
    let mut out = Theorem69 { eps, stages, stop_reason, weights };
    for i in 0..out.stages.len() {
        let v = out.l_value(seq, out.stages[i].witness);
        if !v.is_finite() {
            return Err(GenFunError::StageOverflow { stage: out.stages[i].l });
        }
        out.stages[i].witness_value = v;
    }
    Ok(out)
}

/// `K_l = {α : |α| ≤ l}` in a window.
pub fn length_ball(window: &GroupDualWindow) -> impl Fn(usize) -> Vec<usize> + '_ {
    move |l| window.ball(l.min(window.radius()))
}
