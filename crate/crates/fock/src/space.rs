//! The truncated full Fock space `ℂΩ ⊕ ⊕_{1≤n≤N} K^{⊗n}` with creation
//! operators `ℓ(ζ)` and the free Araki–Woods generators `s(ζ) = ℓ(ζ) + ℓ(Tζ)*`.
//!
//! Tensors `e_{a_1}⊗…⊗e_{a_n}` sit at `offset(n) + Σ a_i k^{n−i}`, so the
//! first leg is most significant and `ℓ(ζ)` prepends a leg. Creation from
//! degree `N` is cut to zero; every vacuum computation checks a word budget
//! under which the cut never contributes.

use numlin::{c, hermitian_eig, inner, psd_sqrt, CMatrix, C64};
use serde::Serialize;

use crate::FockError;

/// Tolerance on `J² = 1`, unitarity of `J` and `Q = Q*`.
pub const INVOLUTION_TOL: f64 = 1e-10;
/// Tolerance on `T² = 1`.
pub const T_TOL: f64 = 1e-9;
/// Largest dense truncation built.
pub const MAX_TOTAL_DIM: usize = 4096;

/// `J` as the matrix `M` of `ξ ↦ M conj(ξ)`, `Q > 0`, and `T = JQ^{1/2}` as
/// the matrix of `ξ ↦ T conj(ξ)`.
#[derive(Debug, Clone)]
pub struct Involution {
    j: CMatrix,
    q: CMatrix,
    t: CMatrix,
}

impl Involution {
    /// Complex conjugation with `Q = I`.
    pub fn standard(k: usize) -> Self {
        Self { j: CMatrix::identity(k), q: CMatrix::identity(k), t: CMatrix::identity(k) }
    }

    pub fn new(j: CMatrix, q: CMatrix) -> Result<Self, FockError> {
        let k = j.rows();
        if !j.is_square() || q.rows() != k || q.cols() != k {
            return Err(FockError::Schema("J and Q must be square of the same size".into()));
        }
        let id = CMatrix::identity(k);
        let r = (&j * &j.conj()).dist(&id);
        if !(r <= INVOLUTION_TOL) {
            return Err(FockError::NotInvolutive { what: "J² ≠ 1".into(), residual: r });
        }
        let r = j.unitarity_defect();
        if !(r <= INVOLUTION_TOL) {
            return Err(FockError::NotInvolutive { what: "J is not anti-unitary".into(), residual: r });
        }
        let r = q.hermitian_defect();
        if !(r <= INVOLUTION_TOL) {
            return Err(FockError::NotInvolutive { what: "Q is not self-adjoint".into(), residual: r });
        }
        let min = hermitian_eig(&q.hermitian_part())?.values[0];
        if !(min > INVOLUTION_TOL) {
            return Err(FockError::NotInvolutive { what: "Q is not positive definite".into(), residual: min });
        }
        let t = &j * &psd_sqrt(&q.hermitian_part())?.conj();
        let r = (&t * &t.conj()).dist(&id);
        if !(r <= T_TOL) {
            return Err(FockError::NotInvolutive { what: "T = JQ^{1/2} is not involutive".into(), residual: r });
        }
        Ok(Self { j, q, t })
    }

    pub fn j_matrix(&self) -> &CMatrix {
        &self.j
    }

    pub fn q_matrix(&self) -> &CMatrix {
        &self.q
    }

    /// Matrix `T` with `Tζ = T conj(ζ)`.
    pub fn t_matrix(&self) -> &CMatrix {
        &self.t
    }

    pub fn apply_j(&self, v: &[C64]) -> Vec<C64> {
        self.j.matvec(&v.iter().map(|z| z.conj()).collect::<Vec<_>>())
    }

    pub fn apply_t(&self, v: &[C64]) -> Vec<C64> {
        self.t.matvec(&v.iter().map(|z| z.conj()).collect::<Vec<_>>())
    }

    /// `‖Q − I‖`.
    pub fn q_defect(&self) -> f64 {
        self.q.dist(&CMatrix::identity(self.q.rows()))
    }
}

/// The truncated full Fock space over `K = ℂ^k` with an involution.
#[derive(Debug, Clone)]
pub struct TruncatedFock {
    base_dim: usize,
    depth: usize,
    offsets: Vec<usize>,
    involution: Involution,
}

impl TruncatedFock {
    /// Depth-`depth` truncation with `J` complex conjugation and `Q = I`.
    pub fn new(base_dim: usize, depth: usize) -> Result<Self, FockError> {
        Self::with_involution(base_dim, depth, Involution::standard(base_dim))
    }

    pub fn with_involution(base_dim: usize, depth: usize, involution: Involution) -> Result<Self, FockError> {
        if base_dim == 0 {
            return Err(FockError::Schema("K must be non-zero".into()));
        }
        if involution.j.rows() != base_dim {
            return Err(FockError::Schema(format!("J acts on dimension {}, K has {base_dim}", involution.j.rows())));
        }
        let mut offsets = vec![0usize];
        let mut size = 1usize;
        for _ in 0..=depth {
            let next = offsets.last().unwrap().saturating_add(size);
            offsets.push(next);
            size = size.saturating_mul(base_dim);
        }
        let total = offsets[depth + 1];
        if total > MAX_TOTAL_DIM {
            return Err(FockError::CapExceeded { total, cap: MAX_TOTAL_DIM });
        }
        Ok(Self { base_dim, depth, offsets, involution })
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `Σ_{n≤N} k^n`.
    pub fn total_dim(&self) -> usize {
        self.offsets[self.depth + 1]
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    pub fn q_is_identity(&self) -> bool {
        self.involution.q_defect() <= INVOLUTION_TOL
    }

    /// First coordinate of degree `n`.
    pub fn offset(&self, n: usize) -> usize {
        self.offsets[n]
    }

    /// `k^n`.
    pub fn degree_dim(&self, n: usize) -> usize {
        self.offsets[n + 1] - self.offsets[n]
    }

    /// Degree of a coordinate.
    pub fn degree_of(&self, index: usize) -> usize {
        (0..=self.depth).find(|&n| index < self.offsets[n + 1]).expect("index inside the truncation")
    }

    /// The vacuum `Ω`.
    pub fn vacuum(&self) -> Vec<C64> {
        let mut v = vec![c(0.0, 0.0); self.total_dim()];
        v[0] = c(1.0, 0.0);
        v
    }

    /// Places a degree-`n` tensor into the truncation.
    pub fn embed(&self, n: usize, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.degree_dim(n));
        let mut out = vec![c(0.0, 0.0); self.total_dim()];
        out[self.offsets[n]..self.offsets[n + 1]].copy_from_slice(v);
        out
    }

    /// The degree-`n` component of a vector.
    pub fn component<'a>(&self, v: &'a [C64], n: usize) -> &'a [C64] {
        &v[self.offsets[n]..self.offsets[n + 1]]
    }

    fn check_vector(&self, zeta: &[C64]) -> Result<(), FockError> {
        if zeta.len() != self.base_dim {
            return Err(FockError::Schema(format!(
                "vector of length {}, K has dimension {}",
                zeta.len(),
                self.base_dim
            )));
        }
        Ok(())
    }

    /// `‖Tζ − ζ‖`; `s(ζ)` is self-adjoint exactly when this vanishes.
    pub fn t_defect(&self, zeta: &[C64]) -> f64 {
        numlin::max_abs_diff(&self.involution.apply_t(zeta), zeta)
    }

    /// `ℓ(ζ)`: `ξ ↦ ζ⊗ξ`, cut to zero on degree `N`.
    pub fn creation(&self, zeta: &[C64]) -> Result<FockOperator, FockError> {
        self.check_vector(zeta)?;
        let mut m = CMatrix::zeros(self.total_dim(), self.total_dim());
        for n in 0..self.depth {
            let width = self.degree_dim(n);
            for (a, &z) in zeta.iter().enumerate() {
                if z.norm() == 0.0 {
                    continue;
                }
                for w in 0..width {
                    m[(self.offsets[n + 1] + a * width + w, self.offsets[n] + w)] = z;
                }
            }
        }
        Ok(FockOperator { matrix: m, shifts: vec![1] })
    }

    /// `s(ζ) = ℓ(ζ) + ℓ(Tζ)*`.
    pub fn s_operator(&self, zeta: &[C64]) -> Result<FockOperator, FockError> {
        let create = self.creation(zeta)?;
        let annihilate = self.creation(&self.involution.apply_t(zeta))?.adjoint();
        Ok(create.add(&annihilate))
    }

    fn budget(&self, needed: usize) -> Result<(), FockError> {
        if needed > self.depth {
            return Err(FockError::DepthExceeded { needed, budget: self.depth, depth: self.depth });
        }
        Ok(())
    }

    /// `w ξ` for `w = g_{w_0} g_{w_1} ⋯`, the last letter acting first.
    pub fn apply_word(&self, gens: &[FockOperator], word: &[usize], v: &[C64]) -> Vec<C64> {
        word.iter().rev().fold(v.to_vec(), |acc, &g| gens[g].matrix.matvec(&acc))
    }

    /// `ω_Ω(w) = ⟨Ω, wΩ⟩` for a word of length at most the depth.
    pub fn vacuum_expectation(&self, gens: &[FockOperator], word: &[usize]) -> Result<C64, FockError> {
        self.budget(word.len())?;
        Ok(self.apply_word(gens, word, &self.vacuum())[0])
    }

    /// `⟨Ω, x^n Ω⟩` for `n = 0..=max_order`.
    pub fn vacuum_moments(&self, x: &FockOperator, max_order: usize) -> Result<Vec<C64>, FockError> {
        self.budget(max_order)?;
        let mut v = self.vacuum();
        let mut out = vec![v[0]];
        for _ in 0..max_order {
            v = x.matrix.matvec(&v);
            out.push(v[0]);
        }
        Ok(out)
    }

    /// `max |ω_Ω(w_1w_2) − ω_Ω(w_2w_1)|` over all pairs of the given words.
    pub fn trace_check(&self, gens: &[FockOperator], words: &[Vec<usize>]) -> Result<f64, FockError> {
        if !self.q_is_identity() {
            return Err(FockError::NotTracial { residual: self.involution.q_defect() });
        }
        let longest = words.iter().map(|w| w.len()).max().unwrap_or(0);
        self.budget(2 * longest)?;
        let adjoints: Vec<FockOperator> = gens.iter().map(|g| g.adjoint()).collect();
        let omega = self.vacuum();
        // ω(w_1w_2) = ⟨w_1*Ω, w_2Ω⟩ with w* the reversed word of adjoints.
        let fwd: Vec<Vec<C64>> = words.iter().map(|w| self.apply_word(gens, w, &omega)).collect();
        let back: Vec<Vec<C64>> = words
            .iter()
            .map(|w| {
                let rev: Vec<usize> = w.iter().rev().cloned().collect();
                self.apply_word(&adjoints, &rev, &omega)
            })
            .collect();
        let mut worst: f64 = 0.0;
        for i in 0..words.len() {
            for j in 0..words.len() {
                let a = inner(&back[i], &fwd[j]);
                let b = inner(&back[j], &fwd[i]);
                worst = worst.max((a - b).norm());
            }
        }
        Ok(worst)
    }
}

/// All words of length `1..=max_len` in `letters` generators.
pub fn all_words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..letters).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// A dense operator on the truncation with the degree shifts it may produce.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockOperator {
    #[serde(skip)]
    pub matrix: CMatrix,
    /// Sorted set of degree changes `deg(out) − deg(in)` of non-zero entries.
    pub shifts: Vec<i64>,
}

impl FockOperator {
    pub fn new(matrix: CMatrix, shifts: Vec<i64>) -> Self {
        let mut shifts = shifts;
        shifts.sort_unstable();
        shifts.dedup();
        Self { matrix, shifts }
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.matrix.adjoint(), self.shifts.iter().map(|s| -s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.matrix + &other.matrix, self.shifts.iter().chain(&other.shifts).cloned().collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let shifts = self.shifts.iter().flat_map(|a| other.shifts.iter().map(move |b| a + b)).collect();
        Self::new(&self.matrix * &other.matrix, shifts)
    }

    pub fn scale(&self, z: C64) -> Self {
        Self::new(self.matrix.scale(z), self.shifts.clone())
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.matrix.matvec(v)
    }
}

/// The product `g_{w_0} g_{w_1} ⋯` as an operator.
pub fn word_operator(gens: &[FockOperator], word: &[usize]) -> Option<FockOperator> {
    let mut it = word.iter();
    let first = gens[*it.next()?].clone();
    Some(it.fold(first, |acc, &g| acc.mul(&gens[g])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: &[f64]) -> Vec<C64> {
        v.iter().map(|&x| c(x, 0.0)).collect()
    }

    #[test]
    fn dimensions() {
        let f = TruncatedFock::new(2, 8).unwrap();
        assert_eq!(f.total_dim(), 511);
        assert_eq!(TruncatedFock::new(2, 2).unwrap().total_dim(), 7);
        assert_eq!(TruncatedFock::new(1, 5).unwrap().total_dim(), 6);
        assert!(matches!(TruncatedFock::new(4, 8), Err(FockError::CapExceeded { total: 87381, .. })));
    }

    #[test]
    fn creation_raises_degree_and_is_contractive() {
        let f = TruncatedFock::new(2, 3).unwrap();
        let l = f.creation(&real(&[0.6, 0.8])).unwrap();
        assert_eq!(l.shifts, vec![1]);
        assert!(l.matrix.op_norm() <= 1.0 + 1e-12);
        let v = l.apply(&f.vacuum());
        assert_eq!(f.component(&v, 1), &real(&[0.6, 0.8])[..]);
        // Degree N is annihilated by the cut.
        let top = f.embed(3, &[c(1.0, 0.0); 8]);
        assert!(l.apply(&top).iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn zero_vector_gives_zero_operator() {
        let f = TruncatedFock::new(3, 3).unwrap();
        assert_eq!(f.s_operator(&[c(0.0, 0.0); 3]).unwrap().matrix.max_abs(), 0.0);
    }

    fn e(a: usize) -> Vec<C64> {
        (0..2).map(|i| c(if i == a { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    #[test]
    fn two_point_function() {
        // ⟨Ω, s(ζ)s(η)Ω⟩ = ⟨Tζ, η⟩.
        let j = CMatrix::from_fn(2, 2, |a, b| if a != b { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let q = CMatrix::diag_real(&[2.0, 0.5]);
        let f = TruncatedFock::with_involution(2, 4, Involution::new(j, q).unwrap()).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let ea = f.s_operator(&e(a)).unwrap();
                let eb = f.s_operator(&e(b)).unwrap();
                let got = f.vacuum_expectation(&[ea, eb], &[0, 1]).unwrap();
                let want = inner(&f.involution().apply_t(&e(a)), &e(b));
                assert!((got - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn invalid_involutions_rejected() {
        let j = CMatrix::identity(2).scale(c(0.0, 1.0));
        // M conj(M) = (i)(−i) = 1, so this J is fine, but Q must match.
        assert!(Involution::new(j.clone(), CMatrix::identity(2)).is_ok());
        assert!(Involution::new(j, CMatrix::diag_real(&[2.0, 1.0])).is_err());
        let bad = CMatrix::identity(2).scale(c(2.0, 0.0));
        assert!(matches!(Involution::new(bad, CMatrix::identity(2)), Err(FockError::NotInvolutive { .. })));
    }

    #[test]
    fn budget_enforced() {
        let f = TruncatedFock::new(1, 4).unwrap();
        let s = f.s_operator(&[c(1.0, 0.0)]).unwrap();
        assert!(f.vacuum_moments(&s, 4).is_ok());
        assert!(matches!(f.vacuum_moments(&s, 5), Err(FockError::DepthExceeded { .. })));
    }

    #[test]
    fn words_enumerated() {
        assert_eq!(all_words(2, 4).len(), 30);
        assert_eq!(all_words(3, 2).len(), 12);
    }
}
