//! The dual block algebra `⊕_α M_{n_α}` of a finite quantum group.
//!
//! Matrix units `e^α_ij` share the flat index of the coefficients `u^α_ij`
//! and pair with them by `⟨e_g, u_h⟩ = δ_gh`. The coproduct is
//! `Δ̂(e_g) = Σ_{a,b} [u_g-coordinate of u_b u_a] e_a ⊗ e_b`, which gives
//! `(id⊗Δ̂)W = W_13 W_12` for `W = Σ u_g ⊗ e_g`.

use numlin::{c, CMatrix, C64};

use crate::algebra::{StructureAlgebra, Wedderburn};
use crate::qg::{AxiomCheck, FiniteQg, AXIOM_TOL};
use crate::QgError;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// `⊕_α M_{n_α}` with its coproduct, counit, antipode and unitary antipode.
///
/// Finite quantum groups are of Kac type, so `R̂ = Ŝ`.
#[derive(Debug, Clone)]
pub struct DualBlockAlgebra {
    parent: String,
    blocks: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
    trivial: usize,
    comult: Vec<Vec<(usize, usize, C64)>>,
    counit: Vec<C64>,
    antipode: CMatrix,
}

impl DualBlockAlgebra {
    /// Builds the dual and checks its axioms and the `W` identity.
    pub fn build(qg: &FiniteQg) -> Result<Self, QgError> {
        let d = qg.dim();
        let ub = qg.ubasis();
        let cols: Vec<Vec<C64>> = (0..d).map(|g| ub.column(g)).collect();
        let mut comult = vec![Vec::new(); d];
        for a in 0..d {
            for b in 0..d {
                let p = qg.to_ucoords(&qg.mul(&cols[b], &cols[a]));
                for (g, v) in p.into_iter().enumerate() {
                    if v.norm() > 1e-14 {
                        comult[g].push((a, b, v));
                    }
                }
            }
        }
        let trivial = qg.trivial_irrep();
        let blocks: Vec<usize> = qg.irreps().iter().map(|i| i.dim).collect();
        let offsets: Vec<usize> = (0..blocks.len()).map(|a| qg.irrep_offset(a)).collect();
        let counit = (0..d)
            .map(|g| {
                let (a, i, j) = qg.split_flat(g);
                if a == trivial && i == j {
                    c(1.0, 0.0)
                } else {
                    ZERO
                }
            })
            .collect();
        // Ŝ(e_b) = Σ_a [u_b-coordinate of S(u_a)] e_a.
        let s_u = CMatrix::from_columns(d, &(0..d).map(|a| qg.to_ucoords(&qg.antipode(&cols[a]))).collect::<Vec<_>>());
        let antipode = s_u.transpose();
        let dual = Self { parent: qg.name().to_string(), blocks, offsets, dim: d, trivial, comult, counit, antipode };
        for chk in dual.checks().into_iter().chain([dual.w_identity_check(qg)]) {
            if !(chk.residual <= AXIOM_TOL) {
                return Err(QgError::AxiomViolation { axiom: chk.axiom.into(), residual: chk.residual });
            }
        }
        Ok(dual)
    }

    pub fn parent(&self) -> &str {
        &self.parent
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn trivial_block(&self) -> usize {
        self.trivial
    }

    pub fn flat_index(&self, alpha: usize, i: usize, j: usize) -> usize {
        self.offsets[alpha] + i * self.blocks[alpha] + j
    }

    pub fn split_flat(&self, g: usize) -> (usize, usize, usize) {
        let a = match self.offsets.binary_search(&g) {
            Ok(a) => a,
            Err(a) => a - 1,
        };
        let r = g - self.offsets[a];
        (a, r / self.blocks[a], r % self.blocks[a])
    }

    /// Flat index of `e^α_ji` given that of `e^α_ij`.
    pub fn transpose_index(&self, g: usize) -> usize {
        let (a, i, j) = self.split_flat(g);
        self.flat_index(a, j, i)
    }

    pub fn basis_vector(&self, g: usize) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim];
        v[g] = c(1.0, 0.0);
        v
    }

    pub fn unit(&self) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim];
        for (a, &n) in self.blocks.iter().enumerate() {
            for i in 0..n {
                v[self.flat_index(a, i, i)] = c(1.0, 0.0);
            }
        }
        v
    }

    /// Nonzero terms `(a, b, c)` of `Δ̂(e_g)`.
    pub fn comult_terms(&self, g: usize) -> &[(usize, usize, C64)] {
        &self.comult[g]
    }

    pub fn counit_vector(&self) -> &[C64] {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &CMatrix {
        &self.antipode
    }

    /// `R̂`, equal to `Ŝ` in the Kac case.
    pub fn unitary_antipode_matrix(&self) -> &CMatrix {
        &self.antipode
    }

    /// Blocks `x^α` of an element given in matrix-unit coordinates.
    pub fn to_blocks(&self, x: &[C64]) -> Vec<CMatrix> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(a, &n)| CMatrix::from_fn(n, n, |i, j| x[self.flat_index(a, i, j)]))
            .collect()
    }

    pub fn from_blocks(&self, blocks: &[CMatrix]) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim];
        for (a, m) in blocks.iter().enumerate() {
            for i in 0..self.blocks[a] {
                for j in 0..self.blocks[a] {
                    v[self.flat_index(a, i, j)] = m[(i, j)];
                }
            }
        }
        v
    }

    pub fn mul(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let bx = self.to_blocks(x);
        let by = self.to_blocks(y);
        let prod: Vec<CMatrix> = bx.iter().zip(&by).map(|(p, q)| p * q).collect();
        self.from_blocks(&prod)
    }

    pub fn star(&self, x: &[C64]) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim];
        for (g, z) in x.iter().enumerate() {
            v[self.transpose_index(g)] = z.conj();
        }
        v
    }

    pub fn counit(&self, x: &[C64]) -> C64 {
        self.counit.iter().zip(x).map(|(e, z)| e * z).sum()
    }

    pub fn antipode(&self, x: &[C64]) -> Vec<C64> {
        self.antipode.matvec(x)
    }

    pub fn unitary_antipode(&self, x: &[C64]) -> Vec<C64> {
        self.antipode.matvec(x)
    }

    /// `Δ̂(x)` dense, index `a*d + b` for `e_a ⊗ e_b`.
    pub fn comult(&self, x: &[C64]) -> Vec<C64> {
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for (g, z) in x.iter().enumerate() {
            if *z == ZERO {
                continue;
            }
            for &(a, b, v) in &self.comult[g] {
                out[a * d + b] += z * v;
            }
        }
        out
    }

    /// Product in `Â ⊗ Â` of dense tensors, using matrix-unit rules legwise.
    pub fn mul2(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        let nz =
            |v: &[C64]| v.iter().enumerate().filter(|(_, z)| **z != ZERO).map(|(i, z)| (i, *z)).collect::<Vec<_>>();
        let ys = nz(y);
        for (p, a) in nz(x) {
            let (g1, g2) = (p / d, p % d);
            let (a1, i1, j1) = self.split_flat(g1);
            let (a2, i2, j2) = self.split_flat(g2);
            for &(q, b) in &ys {
                let (h1, h2) = (q / d, q % d);
                let (b1, k1, l1) = self.split_flat(h1);
                let (b2, k2, l2) = self.split_flat(h2);
                if a1 == b1 && j1 == k1 && a2 == b2 && j2 == k2 {
                    out[self.flat_index(a1, i1, l1) * d + self.flat_index(a2, i2, l2)] += a * b;
                }
            }
        }
        out
    }

    /// Coassociativity, multiplicativity, star, counit and antipode residuals.
    pub fn checks(&self) -> Vec<AxiomCheck> {
        let d = self.dim;
        let e = |g| self.basis_vector(g);
        let delta: Vec<Vec<C64>> = (0..d).map(|g| self.comult(&e(g))).collect();
        let mut out = Vec::new();

        let mut s = 0.0;
        let mut lhs = vec![ZERO; d * d * d];
        let mut rhs = vec![ZERO; d * d * d];
        for g in 0..d {
            lhs.iter_mut().for_each(|z| *z = ZERO);
            rhs.iter_mut().for_each(|z| *z = ZERO);
            for &(a, b, v) in &self.comult[g] {
                for &(p, q, w) in &self.comult[a] {
                    lhs[(p * d + q) * d + b] += v * w;
                }
                for &(p, q, w) in &self.comult[b] {
                    rhs[(a * d + p) * d + q] += v * w;
                }
            }
            s += dist2(&lhs, &rhs);
        }
        out.push(AxiomCheck { axiom: "dual coproduct is coassociative", residual: s.sqrt() });

        let mut s = dist2(&self.comult(&self.unit()), &crate::qg::tensor(&self.unit(), &self.unit()));
        for g in 0..d {
            for h in 0..d {
                let l = self.comult(&self.mul(&e(g), &e(h)));
                s += dist2(&l, &self.mul2(&delta[g], &delta[h]));
            }
        }
        out.push(AxiomCheck { axiom: "dual coproduct is multiplicative", residual: s.sqrt() });

        let mut s = 0.0;
        for g in 0..d {
            let l = self.comult(&self.star(&e(g)));
            let mut r = vec![ZERO; d * d];
            for (p, z) in delta[g].iter().enumerate() {
                if *z != ZERO {
                    r[self.transpose_index(p / d) * d + self.transpose_index(p % d)] += z.conj();
                }
            }
            s += dist2(&l, &r);
        }
        out.push(AxiomCheck { axiom: "dual coproduct is a *-map", residual: s.sqrt() });

        let mut s = 0.0;
        for g in 0..d {
            let mut left = vec![ZERO; d];
            let mut right = vec![ZERO; d];
            for &(a, b, v) in &self.comult[g] {
                left[b] += self.counit[a] * v;
                right[a] += self.counit[b] * v;
            }
            s += dist2(&left, &e(g)) + dist2(&right, &e(g));
        }
        out.push(AxiomCheck { axiom: "dual counit", residual: s.sqrt() });

        let mut s = 0.0;
        for g in 0..d {
            let mut left = vec![ZERO; d];
            let mut right = vec![ZERO; d];
            for &(a, b, v) in &self.comult[g] {
                let sa = self.antipode(&e(a));
                let sb = self.antipode(&e(b));
                for (o, z) in left.iter_mut().zip(self.mul(&sa, &e(b))) {
                    *o += v * z;
                }
                for (o, z) in right.iter_mut().zip(self.mul(&e(a), &sb)) {
                    *o += v * z;
                }
            }
            let target: Vec<C64> = self.unit().iter().map(|u| u * self.counit[g]).collect();
            s += dist2(&left, &target) + dist2(&right, &target);
        }
        out.push(AxiomCheck { axiom: "dual antipode", residual: s.sqrt() });
        out
    }

    /// Residual of `(id⊗Δ̂)W = W_13 W_12`, with the right side assembled from the product of `A`.
    pub fn w_identity_check(&self, qg: &FiniteQg) -> AxiomCheck {
        let d = self.dim;
        let ub = qg.ubasis();
        let cols: Vec<Vec<C64>> = (0..d).map(|g| ub.column(g)).collect();
        let mut lhs = vec![ZERO; d * d * d];
        for g in 0..d {
            for &(a, b, v) in &self.comult[g] {
                for k in 0..d {
                    lhs[(k * d + a) * d + b] += cols[g][k] * v;
                }
            }
        }
        let mut s = 0.0;
        for a in 0..d {
            for b in 0..d {
                let p = qg.mul(&cols[b], &cols[a]);
                for k in 0..d {
                    s += (lhs[(k * d + a) * d + b] - p[k]).norm_sqr();
                }
            }
        }
        AxiomCheck { axiom: "(id⊗Δ̂)W = W_13 W_12", residual: s.sqrt() }
    }

    /// Block pattern of the convolution algebra of functionals on this dual,
    /// with star `f*(x) = conj f(Ŝ(x)*)`. It recovers the algebra of the parent.
    pub fn redual_block_pattern(&self) -> Result<Vec<usize>, QgError> {
        let d = self.dim;
        let mut table = vec![vec![ZERO; d]; d * d];
        for h in 0..d {
            for &(a, b, v) in &self.comult[h] {
                table[a * d + b][h] += v;
            }
        }
        let mult = move |a: usize, b: usize| table[a * d + b].clone();
        let star = CMatrix::from_fn(d, d, |h, b| self.antipode[(self.transpose_index(b), h)]);
        StructureAlgebra { dim: d, mult: &mult, star: &star }.block_pattern(0)
    }
}

/// Wedderburn block pattern of the algebra of a finite quantum group.
pub fn algebra_block_pattern(qg: &FiniteQg) -> Result<Vec<usize>, QgError> {
    let d = qg.dim();
    let mult = |i: usize, j: usize| {
        let mut v = vec![ZERO; d];
        for &(k, x) in qg.mult_terms(i, j) {
            v[k] += x;
        }
        v
    };
    StructureAlgebra { dim: d, mult: &mult, star: qg.star_matrix() }.block_pattern(0)
}

/// Explicit matrix units of the algebra of a finite quantum group.
pub fn algebra_wedderburn(qg: &FiniteQg) -> Result<Wedderburn, QgError> {
    let d = qg.dim();
    let mult = |i: usize, j: usize| {
        let mut v = vec![ZERO; d];
        for &(k, x) in qg.mult_terms(i, j) {
            v[k] += x;
        }
        v
    };
    StructureAlgebra { dim: d, mult: &mult, star: qg.star_matrix() }.wedderburn(qg.unit(), 0)
}

fn dist2(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum()
}
