//! Finite quantum groups given by structure constants.

use numlin::{c, inverse, null_space, psd_check, rank, CMatrix, C64};

use crate::QgError;

/// Absolute tolerance for the algebraic axioms.
pub const AXIOM_TOL: f64 = 1e-9;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// One irreducible corepresentation `u^α = (u_ij)`, each entry a coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub dim: usize,
    /// `coeffs[i*dim + j]` holds the coordinates of `u_ij`.
    pub coeffs: Vec<Vec<C64>>,
}

impl Irrep {
    pub fn entry(&self, i: usize, j: usize) -> &[C64] {
        &self.coeffs[i * self.dim + j]
    }
}

/// Raw structure constants before validation.
#[derive(Debug, Clone)]
pub struct QgData {
    pub name: String,
    pub basis: Vec<String>,
    /// Triples `(i, j, k, c)`: `e_i e_j` has coefficient `c` at `e_k`.
    pub mult: Vec<(usize, usize, usize, C64)>,
    pub unit: Vec<C64>,
    /// Triples `(i, j, k, c)`: `Δ(e_i)` has coefficient `c` at `e_j ⊗ e_k`.
    pub comult: Vec<(usize, usize, usize, C64)>,
    pub counit: Vec<C64>,
    /// `a* = star · conj(a)` on coordinates.
    pub star: CMatrix,
    pub antipode: CMatrix,
    pub haar: Option<Vec<C64>>,
    pub irreps: Vec<Irrep>,
}

/// A validated finite-dimensional compact quantum group.
///
/// Universal and reduced algebras coincide at finite dimension, so one
/// algebra object serves for both.
#[derive(Debug, Clone)]
pub struct FiniteQg {
    name: String,
    dim: usize,
    basis: Vec<String>,
    mult: Vec<Vec<(usize, C64)>>,
    unit: Vec<C64>,
    comult: Vec<Vec<(usize, usize, C64)>>,
    counit: Vec<C64>,
    star: CMatrix,
    antipode: CMatrix,
    star_cols: Vec<Vec<(usize, C64)>>,
    antipode_cols: Vec<Vec<(usize, C64)>>,
    haar: Vec<C64>,
    irreps: Vec<Irrep>,
    offsets: Vec<usize>,
    ubasis: CMatrix,
    ubasis_inv: CMatrix,
    trivial: usize,
    kac_residual: f64,
}

/// Named residual of one axiom check.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub residual: f64,
}

impl FiniteQg {
    /// Validates the data; solves for the Haar state when absent.
    pub fn new(data: QgData) -> Result<Self, QgError> {
        let d = data.basis.len();
        if d == 0 {
            return Err(QgError::Schema("empty basis".into()));
        }
        let check_len = |what: &str, n: usize| {
            if n != d {
                Err(QgError::Schema(format!("{what} has length {n}, expected {d}")))
            } else {
                Ok(())
            }
        };
        check_len("unit", data.unit.len())?;
        check_len("counit", data.counit.len())?;
        for (what, m) in [("star", &data.star), ("antipode", &data.antipode)] {
            if m.rows() != d || m.cols() != d {
                return Err(QgError::Schema(format!("{what} must be {d}×{d}")));
            }
        }
        let mut mult = vec![Vec::new(); d * d];
        for &(i, j, k, v) in &data.mult {
            if i >= d || j >= d || k >= d {
                return Err(QgError::Schema(format!("mult index ({i},{j},{k}) out of range")));
            }
            push_merge(&mut mult[i * d + j], k, v);
        }
        let mut comult = vec![Vec::new(); d];
        for &(i, j, k, v) in &data.comult {
            if i >= d || j >= d || k >= d {
                return Err(QgError::Schema(format!("comult index ({i},{j},{k}) out of range")));
            }
            match comult[i].iter_mut().find(|t: &&mut (usize, usize, C64)| t.0 == j && t.1 == k) {
                Some(t) => t.2 += v,
                None => comult[i].push((j, k, v)),
            }
        }
        for irr in &data.irreps {
            if irr.dim == 0 || irr.coeffs.len() != irr.dim * irr.dim {
                return Err(QgError::Schema("irrep matrix shape does not match its dim".into()));
            }
            for v in &irr.coeffs {
                check_len("irrep coefficient vector", v.len())?;
            }
        }
        let mut offsets = Vec::with_capacity(data.irreps.len());
        let mut total = 0;
        for irr in &data.irreps {
            offsets.push(total);
            total += irr.dim * irr.dim;
        }
        if total != d {
            return Err(QgError::AxiomViolation {
                axiom: "irreducible coefficients span the algebra (Σ n_α² = d)".into(),
                residual: (total as f64 - d as f64).abs(),
            });
        }
        let ubasis = CMatrix::from_fn(d, d, |k, g| {
            let (a, i, j) = split_index(&offsets, &data.irreps, g);
            data.irreps[a].entry(i, j)[k]
        });
        if rank(&ubasis, 1e-10) < d {
            return Err(QgError::AxiomViolation {
                axiom: "irreducible coefficients are linearly independent".into(),
                residual: 1.0,
            });
        }
        let ubasis_inv = inverse(&ubasis)?;
        let mut qg = FiniteQg {
            name: data.name,
            dim: d,
            basis: data.basis,
            mult,
            unit: data.unit,
            comult,
            counit: data.counit,
            star_cols: sparse_columns(&data.star),
            antipode_cols: sparse_columns(&data.antipode),
            star: data.star,
            antipode: data.antipode,
            haar: vec![ZERO; d],
            irreps: data.irreps,
            offsets,
            ubasis,
            ubasis_inv,
            trivial: 0,
            kac_residual: 0.0,
        };
        qg.trivial = qg
            .irreps
            .iter()
            .position(|irr| irr.dim == 1 && numlin::max_abs_diff(&irr.coeffs[0], &qg.unit) < AXIOM_TOL)
            .ok_or_else(|| QgError::AxiomViolation { axiom: "trivial irrep present".into(), residual: 1.0 })?;
        qg.kac_residual = (&(&qg.antipode * &qg.antipode) - &CMatrix::identity(d)).frobenius_norm();
        for chk in qg.hopf_checks() {
            if !(chk.residual <= AXIOM_TOL) {
                return Err(QgError::AxiomViolation { axiom: chk.axiom.into(), residual: chk.residual });
            }
        }
        qg.haar = match data.haar {
            Some(h) => {
                check_len("haar", h.len())?;
                h
            }
            None => qg.solve_haar()?,
        };
        for chk in qg.haar_checks().into_iter().chain(qg.irrep_checks()) {
            if !(chk.residual <= AXIOM_TOL) {
                return Err(QgError::AxiomViolation { axiom: chk.axiom.into(), residual: chk.residual });
            }
        }
        Ok(qg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> &[C64] {
        &self.unit
    }

    pub fn counit_vector(&self) -> &[C64] {
        &self.counit
    }

    pub fn haar_vector(&self) -> &[C64] {
        &self.haar
    }

    pub fn star_matrix(&self) -> &CMatrix {
        &self.star
    }

    pub fn antipode_matrix(&self) -> &CMatrix {
        &self.antipode
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    /// Index of the trivial irrep.
    pub fn trivial_irrep(&self) -> usize {
        self.trivial
    }

    /// Largest irrep dimension (the low-dual bound).
    pub fn max_irrep_dim(&self) -> usize {
        self.irreps.iter().map(|i| i.dim).max().unwrap_or(0)
    }

    /// `‖S² − id‖_F`; zero up to rounding for Kac type.
    pub fn kac_residual(&self) -> f64 {
        self.kac_residual
    }

    pub fn is_kac(&self) -> bool {
        self.kac_residual <= AXIOM_TOL
    }

    pub fn require_kac(&self) -> Result<(), QgError> {
        if self.is_kac() {
            Ok(())
        } else {
            Err(QgError::NotKac { residual: self.kac_residual })
        }
    }

    /// Start of irrep `α` in the flat `(α, i, j)` indexing.
    pub fn irrep_offset(&self, alpha: usize) -> usize {
        self.offsets[alpha]
    }

    /// Flat index of `u^α_ij` (equivalently of the dual matrix unit `e^α_ij`).
    pub fn flat_index(&self, alpha: usize, i: usize, j: usize) -> usize {
        self.offsets[alpha] + i * self.irreps[alpha].dim + j
    }

    /// Inverse of [`FiniteQg::flat_index`].
    pub fn split_flat(&self, g: usize) -> (usize, usize, usize) {
        split_index(&self.offsets, &self.irreps, g)
    }

    /// Columns are the coordinates of `u^α_ij` in flat order.
    pub fn ubasis(&self) -> &CMatrix {
        &self.ubasis
    }

    pub fn ubasis_inv(&self) -> &CMatrix {
        &self.ubasis_inv
    }

    /// Coordinates of `a` in the basis of matrix coefficients `u^α_ij`.
    pub fn to_ucoords(&self, a: &[C64]) -> Vec<C64> {
        self.ubasis_inv.matvec(a)
    }

    pub fn from_ucoords(&self, x: &[C64]) -> Vec<C64> {
        self.ubasis.matvec(x)
    }

    /// Basis vector `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<C64> {
        let mut v = vec![ZERO; self.dim];
        v[i] = c(1.0, 0.0);
        v
    }

    /// Nonzero structure constants of `e_i e_j`.
    pub fn mult_terms(&self, i: usize, j: usize) -> &[(usize, C64)] {
        &self.mult[i * self.dim + j]
    }

    /// Nonzero terms `(j, k, c)` of `Δ(e_i)`.
    pub fn comult_terms(&self, i: usize) -> &[(usize, usize, C64)] {
        &self.comult[i]
    }

    pub fn mul(&self, a: &[C64], b: &[C64]) -> Vec<C64> {
        let d = self.dim;
        let mut out = vec![ZERO; d];
        let bs = sparse(b);
        for (i, &x) in a.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            for &(j, y) in &bs {
                let xy = x * y;
                for &(k, v) in &self.mult[i * d + j] {
                    out[k] += xy * v;
                }
            }
        }
        out
    }

    pub fn star(&self, a: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        for (i, x) in sparse(a) {
            for &(r, v) in &self.star_cols[i] {
                out[r] += x.conj() * v;
            }
        }
        out
    }

    pub fn antipode(&self, a: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        for (i, x) in sparse(a) {
            for &(r, v) in &self.antipode_cols[i] {
                out[r] += x * v;
            }
        }
        out
    }

    pub fn counit(&self, a: &[C64]) -> C64 {
        self.counit.iter().zip(a).map(|(e, x)| e * x).sum()
    }

    pub fn haar(&self, a: &[C64]) -> C64 {
        self.haar.iter().zip(a).map(|(h, x)| h * x).sum()
    }

    /// `Δ(a)` as a dense vector with index `j*d + k` for `e_j ⊗ e_k`.
    pub fn comult(&self, a: &[C64]) -> Vec<C64> {
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for (i, &x) in a.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            for &(j, k, v) in &self.comult[i] {
                out[j * d + k] += x * v;
            }
        }
        out
    }

    /// Matrix of left multiplication `b ↦ a b`.
    pub fn left_mult_matrix(&self, a: &[C64]) -> CMatrix {
        let d = self.dim;
        let mut m = CMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.mul(a, &self.basis_vector(j));
            m.set_column(j, &col);
        }
        m
    }

    /// Product in `A ⊗ A` of dense tensors indexed `j*d + k`.
    pub fn mul2(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let d = self.dim;
        let xs = sparse(x);
        let ys = sparse(y);
        let mut out = vec![ZERO; d * d];
        for &(p, a) in &xs {
            let (i, j) = (p / d, p % d);
            for &(q, b) in &ys {
                let (k, l) = (q / d, q % d);
                let ab = a * b;
                for &(r, u) in &self.mult[i * d + k] {
                    for &(s, v) in &self.mult[j * d + l] {
                        out[r * d + s] += ab * u * v;
                    }
                }
            }
        }
        out
    }

    /// Star in `A ⊗ A`, legwise.
    pub fn star2(&self, x: &[C64]) -> Vec<C64> {
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for (p, a) in sparse(x) {
            let (i, j) = (p / d, p % d);
            for &(r, s1) in &self.star_cols[i] {
                for &(s, s2) in &self.star_cols[j] {
                    out[r * d + s] += a.conj() * s1 * s2;
                }
            }
        }
        out
    }

    /// Algebraic axioms not involving the Haar state or the irreps.
    pub fn hopf_checks(&self) -> Vec<AxiomCheck> {
        let d = self.dim;
        let e = |i| self.basis_vector(i);
        let mut out = Vec::new();

        let mut s = 0.0;
        let mut lhs = vec![ZERO; d];
        let mut rhs = vec![ZERO; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    lhs.iter_mut().for_each(|z| *z = ZERO);
                    rhs.iter_mut().for_each(|z| *z = ZERO);
                    for &(m, v) in &self.mult[i * d + j] {
                        for &(r, w) in &self.mult[m * d + k] {
                            lhs[r] += v * w;
                        }
                    }
                    for &(m, v) in &self.mult[j * d + k] {
                        for &(r, w) in &self.mult[i * d + m] {
                            rhs[r] += v * w;
                        }
                    }
                    s += dist2(&lhs, &rhs);
                }
            }
        }
        out.push(AxiomCheck { axiom: "associativity", residual: s.sqrt() });

        let mut s = 0.0;
        for i in 0..d {
            s += dist2(&self.mul(&self.unit, &e(i)), &e(i));
            s += dist2(&self.mul(&e(i), &self.unit), &e(i));
        }
        out.push(AxiomCheck { axiom: "unit", residual: s.sqrt() });

        let mut s = 0.0;
        let mut buf = vec![ZERO; d * d * d];
        let mut touched = Vec::new();
        for i in 0..d {
            for &(j, k, v) in &self.comult[i] {
                for &(p, q, w) in &self.comult[j] {
                    let idx = (p * d + q) * d + k;
                    buf[idx] += v * w;
                    touched.push(idx);
                }
                for &(p, q, w) in &self.comult[k] {
                    let idx = (j * d + p) * d + q;
                    buf[idx] -= v * w;
                    touched.push(idx);
                }
            }
            for &p in &touched {
                s += buf[p].norm_sqr();
                buf[p] = ZERO;
            }
            touched.clear();
        }
        out.push(AxiomCheck { axiom: "coassociativity", residual: s.sqrt() });

        let mut s = 0.0;
        for i in 0..d {
            let mut left = vec![ZERO; d];
            let mut right = vec![ZERO; d];
            for &(j, k, v) in &self.comult[i] {
                left[k] += self.counit[j] * v;
                right[j] += self.counit[k] * v;
            }
            s += dist2(&left, &e(i)) + dist2(&right, &e(i));
        }
        out.push(AxiomCheck { axiom: "counit", residual: s.sqrt() });

        let mut s = dist2(&self.comult(&self.unit), &tensor(&self.unit, &self.unit));
        let mut buf = vec![ZERO; d * d];
        let mut touched = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for &(m, v) in &self.mult[i * d + j] {
                    for &(p, q, w) in &self.comult[m] {
                        buf[p * d + q] += v * w;
                        touched.push(p * d + q);
                    }
                }
                for &(a, b, x) in &self.comult[i] {
                    for &(cc, e2, y) in &self.comult[j] {
                        let xy = x * y;
                        for &(r, u) in &self.mult[a * d + cc] {
                            for &(t, w) in &self.mult[b * d + e2] {
                                buf[r * d + t] -= xy * u * w;
                                touched.push(r * d + t);
                            }
                        }
                    }
                }
                for &p in &touched {
                    s += buf[p].norm_sqr();
                    buf[p] = ZERO;
                }
                touched.clear();
            }
        }
        out.push(AxiomCheck { axiom: "coproduct is multiplicative", residual: s.sqrt() });

        let mut s = (self.counit(&self.unit) - c(1.0, 0.0)).norm_sqr();
        for i in 0..d {
            for j in 0..d {
                let l = self.counit(&self.mul(&e(i), &e(j)));
                s += (l - self.counit[i] * self.counit[j]).norm_sqr();
            }
        }
        out.push(AxiomCheck { axiom: "counit is multiplicative", residual: s.sqrt() });

        let mut s = 0.0;
        for i in 0..d {
            let mut left = vec![ZERO; d];
            let mut right = vec![ZERO; d];
            for &(j, k, v) in &self.comult[i] {
                for &(m, x) in &self.antipode_cols[j] {
                    for &(r, y) in &self.mult[m * d + k] {
                        left[r] += v * x * y;
                    }
                }
                for &(m, x) in &self.antipode_cols[k] {
                    for &(r, y) in &self.mult[j * d + m] {
                        right[r] += v * x * y;
                    }
                }
            }
            let target: Vec<C64> = self.unit.iter().map(|u| u * self.counit[i]).collect();
            s += dist2(&left, &target) + dist2(&right, &target);
        }
        out.push(AxiomCheck { axiom: "antipode", residual: s.sqrt() });

        let mut s = (&self.star * &self.star.conj()).dist(&CMatrix::identity(d)).powi(2);
        s += dist2(&self.star(&self.unit), &self.unit);
        for i in 0..d {
            for j in 0..d {
                let l = self.star(&self.mul(&e(i), &e(j)));
                let r = self.mul(&self.star(&e(j)), &self.star(&e(i)));
                s += dist2(&l, &r);
            }
        }
        out.push(AxiomCheck { axiom: "star is an anti-multiplicative involution", residual: s.sqrt() });

        let mut s = 0.0;
        for i in 0..d {
            let l = self.comult(&self.star(&e(i)));
            let r = self.star2(&self.comult(&e(i)));
            s += dist2(&l, &r);
        }
        out.push(AxiomCheck { axiom: "coproduct is a *-map", residual: s.sqrt() });
        out
    }

    /// Gram matrix `G[i][j] = φ(e_i* e_j)` for a functional given by its values on the basis.
    pub fn gram(&self, values: &[C64]) -> CMatrix {
        let d = self.dim;
        let stars: Vec<Vec<C64>> = (0..d).map(|i| self.star(&self.basis_vector(i))).collect();
        CMatrix::from_fn(d, d, |i, j| {
            let p = self.mul(&stars[i], &self.basis_vector(j));
            values.iter().zip(&p).map(|(v, x)| v * x).sum()
        })
    }

    /// Haar state checks: normalisation, positivity and bi-invariance.
    pub fn haar_checks(&self) -> Vec<AxiomCheck> {
        let d = self.dim;
        let mut out = Vec::new();
        out.push(AxiomCheck { axiom: "haar is normalised", residual: (self.haar(&self.unit) - c(1.0, 0.0)).norm() });
        let g = self.gram(&self.haar);
        let herm = g.hermitian_defect();
        let min = numlin::min_eigenvalue(&g.hermitian_part()).unwrap_or(f64::NEG_INFINITY);
        out.push(AxiomCheck { axiom: "haar is positive", residual: herm + (-min).max(0.0) });
        let mut s = 0.0;
        for i in 0..d {
            let mut left = vec![ZERO; d];
            let mut right = vec![ZERO; d];
            for &(j, k, v) in &self.comult[i] {
                left[k] += self.haar[j] * v;
                right[j] += self.haar[k] * v;
            }
            let target: Vec<C64> = self.unit.iter().map(|u| u * self.haar[i]).collect();
            s += dist2(&left, &target) + dist2(&right, &target);
        }
        out.push(AxiomCheck { axiom: "haar is bi-invariant", residual: s.sqrt() });
        out
    }

    /// Irrep checks: unitarity, coproduct formula, and Schur orthogonality.
    pub fn irrep_checks(&self) -> Vec<AxiomCheck> {
        let mut unit_res = 0.0;
        let mut cop_res = 0.0;
        let mut schur = 0.0;
        let d = self.dim;
        for irr in &self.irreps {
            let n = irr.dim;
            let stars: Vec<Vec<C64>> = irr.coeffs.iter().map(|v| self.star(v)).collect();
            for i in 0..n {
                for j in 0..n {
                    let target: Vec<C64> = self.unit.iter().map(|u| if i == j { *u } else { ZERO }).collect();
                    let mut a = vec![ZERO; d];
                    let mut b = vec![ZERO; d];
                    for k in 0..n {
                        add_into(&mut a, &self.mul(&stars[k * n + i], irr.entry(k, j)));
                        add_into(&mut b, &self.mul(irr.entry(i, k), &stars[j * n + k]));
                    }
                    unit_res += dist2(&a, &target) + dist2(&b, &target);
                    let lhs = self.comult(irr.entry(i, j));
                    let mut rhs = vec![ZERO; d * d];
                    for k in 0..n {
                        add_into(&mut rhs, &tensor(irr.entry(i, k), irr.entry(k, j)));
                    }
                    cop_res += dist2(&lhs, &rhs);
                }
            }
        }
        let kac = self.is_kac();
        for (a, ia) in self.irreps.iter().enumerate() {
            for (b, ib) in self.irreps.iter().enumerate() {
                for i in 0..ia.dim {
                    for j in 0..ia.dim {
                        let s = self.star(ia.entry(i, j));
                        for k in 0..ib.dim {
                            for l in 0..ib.dim {
                                let v = self.haar(&self.mul(&s, ib.entry(k, l)));
                                let expect = if a == b && i == k && j == l { 1.0 / ia.dim as f64 } else { 0.0 };
                                if a != b || kac {
                                    schur += (v - c(expect, 0.0)).norm_sqr();
                                }
                            }
                        }
                    }
                }
            }
        }
        vec![
            AxiomCheck { axiom: "irreps are unitary", residual: unit_res.sqrt() },
            AxiomCheck { axiom: "irrep coproduct Δ(u_ij) = Σ u_ik ⊗ u_kj", residual: cop_res.sqrt() },
            AxiomCheck { axiom: "Schur orthogonality", residual: schur.sqrt() },
        ]
    }

    /// Unitarity defect of `W = Σ u^α_ij ⊗ e^α_ij` in the Haar-GNS regular representation.
    pub fn w_unitarity_residual(&self) -> Result<f64, QgError> {
        let g = self.gram(&self.haar).hermitian_part();
        let e = numlin::hermitian_eig(&g)?;
        let sq = e.map(|x| c(x.max(0.0).sqrt(), 0.0));
        let isq = e.map(|x| c(1.0 / x.max(1e-300).sqrt(), 0.0));
        let lambda = |a: &[C64]| &(&sq * &self.left_mult_matrix(a)) * &isq;
        let d = self.dim;
        let mut res = 0.0;
        for irr in &self.irreps {
            let n = irr.dim;
            let mut w = CMatrix::zeros(n * d, n * d);
            for i in 0..n {
                for j in 0..n {
                    w.set_block(i * d, j * d, &lambda(irr.entry(i, j)));
                }
            }
            res += w.unitarity_defect().powi(2);
        }
        Ok(res.sqrt())
    }

    /// Every check, in a fixed order, for reporting.
    pub fn all_checks(&self) -> Result<Vec<AxiomCheck>, QgError> {
        let mut v = self.hopf_checks();
        v.extend(self.haar_checks());
        v.extend(self.irrep_checks());
        v.push(AxiomCheck { axiom: "W is unitary", residual: self.w_unitarity_residual()? });
        Ok(v)
    }

    /// Unique bi-invariant state from the null space of the invariance system.
    pub fn solve_haar(&self) -> Result<Vec<C64>, QgError> {
        let h = solve_haar_system(&self.comult, &self.unit)?;
        let g = self.gram(&h);
        if g.hermitian_defect() > 1e-9 || !psd_check(&g.hermitian_part(), 1e-9)? {
            return Err(QgError::HaarNotFound);
        }
        Ok(h)
    }

    /// Residual of `h` as a bi-invariant state, for independent verification.
    pub fn invariance_residual(&self, h: &[C64]) -> f64 {
        let d = self.dim;
        let mut s = 0.0;
        for i in 0..d {
            let mut left = vec![ZERO; d];
            let mut right = vec![ZERO; d];
            for &(j, k, v) in &self.comult[i] {
                left[k] += h[j] * v;
                right[j] += h[k] * v;
            }
            let target: Vec<C64> = self.unit.iter().map(|u| u * h[i]).collect();
            s += dist2(&left, &target) + dist2(&right, &target);
        }
        s.sqrt()
    }
}

/// Normalised solution of `(h⊗id)Δ = h(·)1 = (id⊗h)Δ` on a coproduct table.
///
/// Fails with `HaarNotFound` when only `h = 0` solves the system and with
/// `NonUnique` when the solution space has dimension above one.
pub fn solve_haar_system(comult: &[Vec<(usize, usize, C64)>], unit: &[C64]) -> Result<Vec<C64>, QgError> {
    let d = unit.len();
    let mut m = CMatrix::zeros(2 * d * d, d);
    for i in 0..d {
        for &(j, k, v) in &comult[i] {
            m[(i * d + k, j)] += v;
            m[(d * d + i * d + j, k)] += v;
        }
        for k in 0..d {
            m[(i * d + k, i)] -= unit[k];
            m[(d * d + i * d + k, i)] -= unit[k];
        }
    }
    let ns = null_space(&m, 1e-10);
    match ns.cols() {
        0 => return Err(QgError::HaarNotFound),
        1 => {}
        k => return Err(QgError::NonUnique { dimension: k }),
    }
    let h = ns.column(0);
    let norm: C64 = unit.iter().zip(&h).map(|(u, x)| u * x).sum();
    if norm.norm() < 1e-12 {
        return Err(QgError::HaarNotFound);
    }
    Ok(h.iter().map(|x| x / norm).collect())
}

fn split_index(offsets: &[usize], irreps: &[Irrep], g: usize) -> (usize, usize, usize) {
    let a = match offsets.binary_search(&g) {
        Ok(a) => a,
        Err(a) => a - 1,
    };
    let r = g - offsets[a];
    let n = irreps[a].dim;
    (a, r / n, r % n)
}

fn push_merge(v: &mut Vec<(usize, C64)>, k: usize, x: C64) {
    match v.iter_mut().find(|t| t.0 == k) {
        Some(t) => t.1 += x,
        None => v.push((k, x)),
    }
}

fn sparse_columns(m: &CMatrix) -> Vec<Vec<(usize, C64)>> {
    (0..m.cols()).map(|j| sparse(&m.column(j))).collect()
}

fn sparse(x: &[C64]) -> Vec<(usize, C64)> {
    x.iter().enumerate().filter(|(_, z)| **z != ZERO).map(|(i, z)| (i, *z)).collect()
}

fn dist2(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum()
}

fn add_into(a: &mut [C64], b: &[C64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// Dense `a ⊗ b` with index `j*d + k`.
pub fn tensor(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}
