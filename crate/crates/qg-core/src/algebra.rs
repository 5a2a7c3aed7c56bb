//! Wedderburn decomposition of a finite-dimensional C*-algebra given by structure constants.

use numlin::{c, hermitian_eig, inverse, null_space, CMatrix, C64};

use crate::rng::SeededRng;
use crate::QgError;

/// A finite-dimensional *-algebra: product and star on coordinates.
pub struct StructureAlgebra<'a> {
    pub dim: usize,
    /// `mult(i, j)` returns the coordinates of `e_i e_j`.
    pub mult: &'a dyn Fn(usize, usize) -> Vec<C64>,
    /// `a* = star · conj(a)`.
    pub star: &'a CMatrix,
}

impl StructureAlgebra<'_> {
    /// Sorted block sizes `n_k` with the algebra isomorphic to `⊕_k M_{n_k}`.
    ///
    /// Uses the faithful trace `τ(a) = Tr L(a)` of the left regular
    /// representation. A random self-adjoint central element acts on block
    /// `k` by a scalar `z_k`; its eigenvalue multiplicities in the
    /// `τ`-orthonormalised regular representation are the `n_k²`.
    pub fn block_pattern(&self, seed: u64) -> Result<Vec<usize>, QgError> {
        let d = self.dim;
        let basis = |i: usize| {
            let mut e = vec![c(0.0, 0.0); d];
            e[i] = c(1.0, 0.0);
            e
        };
        let table: Vec<Vec<C64>> = (0..d * d).map(|p| (self.mult)(p / d, p % d)).collect();
        // L(a)[k][j] = Σ_i a_i table[i][j][k].
        let left =
            |a: &[C64]| CMatrix::from_fn(d, d, |k, j| a.iter().enumerate().map(|(i, x)| x * table[i * d + j][k]).sum());
        let traces: Vec<C64> = (0..d).map(|i| (0..d).map(|j| table[i * d + j][j]).sum()).collect();
        let star_of = |a: &[C64]| {
            let conj: Vec<C64> = a.iter().map(|z| z.conj()).collect();
            self.star.matvec(&conj)
        };
        let star_left: Vec<CMatrix> = (0..d).map(|i| left(&star_of(&basis(i)))).collect();
        let gram = CMatrix::from_fn(d, d, |i, j| (0..d).map(|k| star_left[i][(k, j)] * traces[k]).sum());
        let ge = hermitian_eig(&gram.hermitian_part())?;
        if ge.values[0] <= 1e-9 * ge.values[d - 1].max(1.0) {
            return Err(QgError::AxiomViolation { axiom: "regular trace is faithful".into(), residual: -ge.values[0] });
        }
        let sq = ge.map(|x| c(x.sqrt(), 0.0));
        let isq = ge.map(|x| c(1.0 / x.sqrt(), 0.0));

        // Centre: kernel of a ↦ (a e_j − e_j a)_j.
        let mut comm = CMatrix::zeros(d * d, d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    comm[(j * d + k, i)] = table[i * d + j][k] - table[j * d + i][k];
                }
            }
        }
        let centre = null_space(&comm, 1e-10);
        let mut rng = SeededRng::new(seed);
        let mut z = vec![c(0.0, 0.0); d];
        for k in 0..centre.cols() {
            let w = rng.complex();
            for (zi, ci) in z.iter_mut().zip(centre.column(k)) {
                *zi += w * ci;
            }
        }
        let zs = star_of(&z);
        let z: Vec<C64> = z.iter().zip(&zs).map(|(a, b)| (a + b) * 0.5).collect();
        let lz = &(&sq * &left(&z)) * &isq;
        let ev = hermitian_eig(&lz.hermitian_part())?.values;
        let scale = ev.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let mut blocks = Vec::new();
        let mut start = 0;
        for k in 1..=d {
            if k == d || ev[k] - ev[k - 1] > 1e-7 * scale {
                let mult = k - start;
                let n = (mult as f64).sqrt().round() as usize;
                if n * n != mult {
                    return Err(QgError::AxiomViolation {
                        axiom: "central eigenvalue multiplicities are perfect squares".into(),
                        residual: mult as f64,
                    });
                }
                blocks.push(n);
                start = k;
            }
        }
        if blocks.len() != centre.cols() {
            return Err(QgError::AxiomViolation {
                axiom: "one central eigenvalue per block".into(),
                residual: (blocks.len() as f64 - centre.cols() as f64).abs(),
            });
        }
        blocks.sort_unstable();
        Ok(blocks)
    }
}

/// Matrix units `e^b_ij` realising an algebra as `⊕_b M_{n_b}`.
#[derive(Debug, Clone)]
pub struct Wedderburn {
    /// Block sizes, sorted ascending.
    pub blocks: Vec<usize>,
    /// Column `f` holds the coordinates of the matrix unit with flat index
    /// `f = offset_b + i n_b + j`.
    pub units: CMatrix,
    /// Inverse of `units`: algebra coordinates to block coordinates.
    pub to_blocks: CMatrix,
    /// Largest residual of the matrix-unit relations.
    pub residual: f64,
}

/// Tolerance on the matrix-unit relations.
pub const WEDDERBURN_TOL: f64 = 1e-9;

struct Regular<'a> {
    d: usize,
    table: Vec<Vec<C64>>,
    star: &'a CMatrix,
    /// `τ`-orthonormalisation `S` and its inverse.
    sq: CMatrix,
    isq: CMatrix,
    unit: Vec<C64>,
}

impl Regular<'_> {
    fn left(&self, a: &[C64]) -> CMatrix {
        let d = self.d;
        CMatrix::from_fn(d, d, |k, j| a.iter().enumerate().map(|(i, x)| x * self.table[i * d + j][k]).sum())
    }

    /// `S L(a) S⁻¹`, Hermitian for self-adjoint `a`.
    fn rep(&self, a: &[C64]) -> CMatrix {
        &(&self.sq * &self.left(a)) * &self.isq
    }

    /// The element `a` with `S L(a) S⁻¹ = m`, read off as `L(a) 1`.
    fn element(&self, m: &CMatrix) -> Vec<C64> {
        (&(&self.isq * m) * &self.sq).matvec(&self.unit)
    }

    fn mul(&self, a: &[C64], b: &[C64]) -> Vec<C64> {
        self.left(a).matvec(b)
    }

    fn star_of(&self, a: &[C64]) -> Vec<C64> {
        let conj: Vec<C64> = a.iter().map(|z| z.conj()).collect();
        self.star.matvec(&conj)
    }
}

/// Spectral projection of a Hermitian matrix onto the eigenvectors with
/// indices `range`.
fn spectral_projection(vectors: &CMatrix, range: std::ops::Range<usize>) -> CMatrix {
    let n = vectors.rows();
    let mut p = CMatrix::zeros(n, n);
    for k in range {
        let v = vectors.column(k);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += v[i] * v[j].conj();
            }
        }
    }
    p
}

/// Groups sorted eigenvalues into clusters separated by more than `gap`.
fn clusters(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > gap {
            out.push(start..k);
            start = k;
        }
    }
    out
}

impl StructureAlgebra<'_> {
    fn regular(&self, unit: &[C64]) -> Result<Regular<'_>, QgError> {
        let d = self.dim;
        let table: Vec<Vec<C64>> = (0..d * d).map(|p| (self.mult)(p / d, p % d)).collect();
        let mut reg = Regular {
            d,
            table,
            star: self.star,
            sq: CMatrix::identity(d),
            isq: CMatrix::identity(d),
            unit: unit.to_vec(),
        };
        let traces: Vec<C64> = (0..d).map(|i| (0..d).map(|j| reg.table[i * d + j][j]).sum()).collect();
        let star_left: Vec<CMatrix> = (0..d)
            .map(|i| {
                let mut e = vec![c(0.0, 0.0); d];
                e[i] = c(1.0, 0.0);
                reg.left(&reg.star_of(&e))
            })
            .collect();
        let gram = CMatrix::from_fn(d, d, |i, j| (0..d).map(|k| star_left[i][(k, j)] * traces[k]).sum());
        let ge = hermitian_eig(&gram.hermitian_part())?;
        if ge.values[0] <= 1e-9 * ge.values[d - 1].max(1.0) {
            return Err(QgError::AxiomViolation { axiom: "regular trace is faithful".into(), residual: -ge.values[0] });
        }
        reg.sq = ge.map(|x| c(x.sqrt(), 0.0));
        reg.isq = ge.map(|x| c(1.0 / x.sqrt(), 0.0));
        Ok(reg)
    }

    /// Explicit matrix units for the algebra with the given unit.
    ///
    /// Minimal central projections are spectral projections of a random
    /// self-adjoint central element; inside each block, spectral projections
    /// of a compressed random self-adjoint element are minimal projections
    /// `f_i`, and `e_1j ∝ f_1 x f_j` for a random `x`.
    pub fn wedderburn(&self, unit: &[C64], seed: u64) -> Result<Wedderburn, QgError> {
        let d = self.dim;
        let reg = self.regular(unit)?;
        let mut rng = SeededRng::new(seed);
        let random_sa = |rng: &mut SeededRng, basis: Option<&CMatrix>| {
            let a: Vec<C64> = match basis {
                Some(b) => {
                    let mut z = vec![c(0.0, 0.0); d];
                    for k in 0..b.cols() {
                        let w = rng.complex();
                        for (zi, ci) in z.iter_mut().zip(b.column(k)) {
                            *zi += w * ci;
                        }
                    }
                    z
                }
                None => rng.complex_vec(d),
            };
            let s = reg.star_of(&a);
            a.iter().zip(&s).map(|(x, y)| (x + y) * 0.5).collect::<Vec<C64>>()
        };
        let mut comm = CMatrix::zeros(d * d, d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    comm[(j * d + k, i)] = reg.table[i * d + j][k] - reg.table[j * d + i][k];
                }
            }
        }
        let centre = null_space(&comm, 1e-10);
        let z = random_sa(&mut rng, Some(&centre));
        let ez = hermitian_eig(&reg.rep(&z).hermitian_part())?;
        let scale = ez.values.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let central = clusters(&ez.values, 1e-7 * scale);
        if central.len() != centre.cols() {
            return Err(QgError::AxiomViolation {
                axiom: "one central eigenvalue per block".into(),
                residual: (central.len() as f64 - centre.cols() as f64).abs(),
            });
        }
        let mut found: Vec<(usize, Vec<Vec<C64>>)> = Vec::new();
        for range in central {
            let mult = range.len();
            let n = (mult as f64).sqrt().round() as usize;
            if n * n != mult {
                return Err(QgError::AxiomViolation {
                    axiom: "central eigenvalue multiplicities are perfect squares".into(),
                    residual: mult as f64,
                });
            }
            let vk = CMatrix::from_columns(d, &range.clone().map(|k| ez.vectors.column(k)).collect::<Vec<_>>());
            let a = random_sa(&mut rng, None);
            let compressed = &(&vk.adjoint() * &reg.rep(&a)) * &vk;
            let ea = hermitian_eig(&compressed.hermitian_part())?;
            let s = ea.values.iter().fold(1.0f64, |m, x| m.max(x.abs()));
            let minimal = clusters(&ea.values, 1e-7 * s);
            if minimal.len() != n || minimal.iter().any(|r| r.len() != n) {
                return Err(QgError::AxiomViolation {
                    axiom: "block splits into minimal projections".into(),
                    residual: minimal.len() as f64,
                });
            }
            let f: Vec<Vec<C64>> = minimal
                .into_iter()
                .map(|r| reg.element(&(&(&vk * &spectral_projection(&ea.vectors, r)) * &vk.adjoint())))
                .collect();
            let x = rng.complex_vec(d);
            let tau = |a: &[C64]| reg.left(a).trace();
            let tf1 = tau(&f[0]);
            let first_row: Vec<Vec<C64>> = (0..n)
                .map(|j| {
                    if j == 0 {
                        return f[0].clone();
                    }
                    let y = reg.mul(&reg.mul(&f[0], &x), &f[j]);
                    let norm = (tau(&reg.mul(&y, &reg.star_of(&y))) / tf1).re.sqrt();
                    y.iter().map(|v| v / norm).collect()
                })
                .collect();
            let units: Vec<Vec<C64>> = (0..n * n)
                .map(|p| {
                    let (i, j) = (p / n, p % n);
                    if i == 0 {
                        first_row[j].clone()
                    } else {
                        reg.mul(&reg.star_of(&first_row[i]), &first_row[j])
                    }
                })
                .collect();
            found.push((n, units));
        }
        found.sort_by_key(|(n, _)| *n);
        let blocks: Vec<usize> = found.iter().map(|(n, _)| *n).collect();
        let columns: Vec<Vec<C64>> = found.into_iter().flat_map(|(_, u)| u).collect();
        let units = CMatrix::from_columns(d, &columns);
        let to_blocks = inverse(&units)?;
        let residual = self.unit_residual(&reg, &blocks, &columns);
        if !(residual <= WEDDERBURN_TOL) {
            return Err(QgError::AxiomViolation { axiom: "matrix-unit relations".into(), residual });
        }
        Ok(Wedderburn { blocks, units, to_blocks, residual })
    }

    fn unit_residual(&self, reg: &Regular<'_>, blocks: &[usize], units: &[Vec<C64>]) -> f64 {
        let d = self.dim;
        let mut offsets = Vec::new();
        let mut o = 0;
        for &n in blocks {
            offsets.push(o);
            o += n * n;
        }
        let zero = vec![c(0.0, 0.0); d];
        let dist = |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        let mut sum = zero.clone();
        for (b, &n) in blocks.iter().enumerate() {
            for i in 0..n {
                for (s, v) in sum.iter_mut().zip(&units[offsets[b] + i * (n + 1)]) {
                    *s += v;
                }
                for j in 0..n {
                    let u = &units[offsets[b] + i * n + j];
                    worst = worst.max(dist(&reg.star_of(u), &units[offsets[b] + j * n + i]));
                    for (b2, &n2) in blocks.iter().enumerate() {
                        for k in 0..n2 {
                            for l in 0..n2 {
                                let p = reg.mul(u, &units[offsets[b2] + k * n2 + l]);
                                let target = if b == b2 && j == k { &units[offsets[b] + i * n + l] } else { &zero };
                                worst = worst.max(dist(&p, target));
                            }
                        }
                    }
                }
            }
        }
        worst.max(dist(&sum, &reg.unit))
    }
}
