//! Built-in quantum groups and group windows.

use std::path::PathBuf;

use numlin::{c, inverse, CMatrix, C64};

use crate::group::{FiniteGroup, GroupRep};
use crate::qg::{tensor, FiniteQg, Irrep, QgData};
use crate::window::{GroupDualWindow, WindowGroup};
use crate::{doc, QgError};

/// Largest `n` for the cyclic families.
pub const MAX_CYCLIC: usize = 64;

/// Group algebra `ℂ[ℤ_n]`: the dual of `ℤ_n`, with one-dimensional irreps `λ_k`.
pub fn dual_z(n: usize) -> Result<FiniteQg, QgError> {
    check_cyclic(n)?;
    FiniteQg::new(FiniteGroup::cyclic(n).group_algebra(&format!("dual-Z({n})")))
}

/// Function algebra `C(ℤ_n)` with the characters as irreps.
pub fn fun_z(n: usize) -> Result<FiniteQg, QgError> {
    check_cyclic(n)?;
    let g = FiniteGroup::cyclic(n);
    FiniteQg::new(g.function_algebra(&format!("fun-Z({n})"), &FiniteGroup::cyclic_characters(n)))
}

fn check_cyclic(n: usize) -> Result<(), QgError> {
    if n == 0 || n > MAX_CYCLIC {
        return Err(QgError::UnknownPreset(format!("cyclic order {n} outside 1..={MAX_CYCLIC}")));
    }
    Ok(())
}

/// Function algebra `C(S_3)`; irreps trivial, sign and the two-dimensional standard one.
pub fn fun_s3() -> Result<FiniteQg, QgError> {
    let (g, standard) = FiniteGroup::s3_with_standard_rep();
    let sign = GroupRep {
        dim: 1,
        matrices: standard
            .matrices
            .iter()
            .map(|m| {
                let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
                CMatrix::new(1, 1, vec![c(det.re.round(), 0.0)])
            })
            .collect(),
    };
    FiniteQg::new(g.function_algebra("fun-S3", &[g.trivial_rep(), sign, standard]))
}

/// Group algebra `ℂ[S_3]`, cocommutative with six one-dimensional irreps.
pub fn dual_s3() -> Result<FiniteQg, QgError> {
    let (g, _) = FiniteGroup::s3_with_standard_rep();
    FiniteQg::new(g.group_algebra("dual-S3"))
}

/// The Kac–Paljutkin quantum group.
///
/// Generators `x, y, z` with `x² = y² = 1`, `xy = yx`, `zx = yz`, `zy = xz`,
/// `z² = ½(1 + x + y − xy)`, realised faithfully in `ℂ⁴ ⊕ M_2`. The basis is
/// the monomials `x^a y^b z^c`, index `a + 2b + 4c`. The coproduct is
/// `Δx = x⊗x`, `Δy = y⊗y`, `Δz = ½(1⊗1 + y⊗1 + 1⊗x − y⊗x)(z⊗z)`.
pub fn kac_paljutkin() -> Result<FiniteQg, QgError> {
    let kp = KpRealisation::new()?;
    FiniteQg::new(kp.data())
}

/// The four characters of the Kac–Paljutkin algebra, as values on the monomial basis.
pub fn kac_paljutkin_characters() -> Result<Vec<Vec<C64>>, QgError> {
    let kp = KpRealisation::new()?;
    Ok((0..4).map(|k| (0..8).map(|i| kp.images[i][(k, k)]).collect()).collect())
}

struct KpRealisation {
    /// Block-diagonal 6×6 images of the basis monomials.
    images: Vec<CMatrix>,
    /// Inverse of the coordinate map from the basis to the 8 block entries.
    coords_inv: CMatrix,
}

const KP_BLOCK: [(usize, usize); 8] = [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (4, 5), (5, 4), (5, 5)];

impl KpRealisation {
    fn new() -> Result<Self, QgError> {
        let i = c(0.0, 1.0);
        let one = c(1.0, 0.0);
        let z0 = c(0.0, 0.0);
        let block = |d: [C64; 4], m: [[C64; 2]; 2]| {
            let mut a = CMatrix::zeros(6, 6);
            for k in 0..4 {
                a[(k, k)] = d[k];
            }
            for r in 0..2 {
                for s in 0..2 {
                    a[(4 + r, 4 + s)] = m[r][s];
                }
            }
            a
        };
        let x = block([one, one, -one, -one], [[one, z0], [z0, -one]]);
        let y = block([one, one, -one, -one], [[-one, z0], [z0, one]]);
        let z = block([one, -one, i, -i], [[z0, one], [one, z0]]);
        let id = CMatrix::identity(6);
        let mut images = Vec::with_capacity(8);
        for idx in 0..8 {
            let mut m = id.clone();
            if idx & 1 != 0 {
                m = &m * &x;
            }
            if idx & 2 != 0 {
                m = &m * &y;
            }
            if idx & 4 != 0 {
                m = &m * &z;
            }
            images.push(m);
        }
        let coords = CMatrix::from_fn(8, 8, |r, col| images[col][KP_BLOCK[r]]);
        let coords_inv = inverse(&coords)?;
        Ok(Self { images, coords_inv })
    }

    fn decompose(&self, m: &CMatrix) -> Vec<C64> {
        let v: Vec<C64> = KP_BLOCK.iter().map(|&rc| m[rc]).collect();
        self.coords_inv.matvec(&v)
    }

    fn data(&self) -> QgData {
        let d = 8;
        let one = c(1.0, 0.0);
        let mut mult = Vec::new();
        let mut table = vec![vec![c(0.0, 0.0); d]; d * d];
        for a in 0..d {
            for b in 0..d {
                let p = self.decompose(&(&self.images[a] * &self.images[b]));
                for (k, v) in p.iter().enumerate() {
                    if v.norm() > 1e-13 {
                        mult.push((a, b, k, *v));
                    }
                }
                table[a * d + b] = p;
            }
        }
        let mul = |u: &[C64], v: &[C64]| {
            let mut out = vec![c(0.0, 0.0); d];
            for a in 0..d {
                for b in 0..d {
                    let s = u[a] * v[b];
                    if s.norm() == 0.0 {
                        continue;
                    }
                    for k in 0..d {
                        out[k] += s * table[a * d + b][k];
                    }
                }
            }
            out
        };
        let mul2 = |u: &[C64], v: &[C64]| {
            let mut out = vec![c(0.0, 0.0); d * d];
            for p in 0..d * d {
                if u[p].norm() == 0.0 {
                    continue;
                }
                for q in 0..d * d {
                    if v[q].norm() == 0.0 {
                        continue;
                    }
                    let l = table[(p / d) * d + q / d].clone();
                    let r = &table[(p % d) * d + q % d];
                    let s = u[p] * v[q];
                    for (k, lk) in l.iter().enumerate() {
                        if lk.norm() == 0.0 {
                            continue;
                        }
                        for (m, rm) in r.iter().enumerate() {
                            out[k * d + m] += s * lk * rm;
                        }
                    }
                }
            }
            out
        };
        let e = |k: usize| {
            let mut v = vec![c(0.0, 0.0); d];
            v[k] = one;
            v
        };
        let (ux, uy, uz) = (e(1), e(2), e(4));
        let dx = tensor(&ux, &ux);
        let dy = tensor(&uy, &uy);
        let mut pre = tensor(&e(0), &e(0));
        for (k, v) in tensor(&uy, &e(0)).iter().enumerate() {
            pre[k] += v;
        }
        for (k, v) in tensor(&e(0), &ux).iter().enumerate() {
            pre[k] += v;
        }
        for (k, v) in tensor(&uy, &ux).iter().enumerate() {
            pre[k] -= v;
        }
        let pre: Vec<C64> = pre.iter().map(|v| v * 0.5).collect();
        let dz = mul2(&pre, &tensor(&uz, &uz));
        let mut comult = Vec::new();
        for idx in 0..d {
            let mut t = tensor(&e(0), &e(0));
            if idx & 1 != 0 {
                t = mul2(&t, &dx);
            }
            if idx & 2 != 0 {
                t = mul2(&t, &dy);
            }
            if idx & 4 != 0 {
                t = mul2(&t, &dz);
            }
            for (p, v) in t.iter().enumerate() {
                if v.norm() > 1e-13 {
                    comult.push((idx, p / d, p % d, *v));
                }
            }
        }
        let star = CMatrix::from_fn(d, d, |r, col| self.decompose(&self.images[col].adjoint())[r]);
        let antipode = CMatrix::from_fn(d, d, |r, col| {
            // S(x^a y^b z^c) = z^c y^b x^a with S fixing each generator.
            let mut m = e(0);
            if col & 4 != 0 {
                m = mul(&m, &uz);
            }
            if col & 2 != 0 {
                m = mul(&m, &uy);
            }
            if col & 1 != 0 {
                m = mul(&m, &ux);
            }
            m[r]
        });
        let half = |a: &[C64], b: &[C64], sign: f64| -> Vec<C64> {
            a.iter().zip(b).map(|(p, q)| (p + q * sign) * 0.5).collect()
        };
        let p = half(&e(0), &uy, 1.0);
        let q = half(&e(0), &uy, -1.0);
        let pz = mul(&p, &uz);
        let qz = mul(&q, &uz);
        let xqz = mul(&ux, &qz);
        let xpz = mul(&ux, &pz);
        let irreps = vec![
            Irrep { dim: 1, coeffs: vec![e(0)] },
            Irrep { dim: 1, coeffs: vec![e(1)] },
            Irrep { dim: 1, coeffs: vec![e(2)] },
            Irrep { dim: 1, coeffs: vec![e(3)] },
            Irrep { dim: 2, coeffs: vec![pz, qz, xqz, xpz] },
        ];
        let names = ["1", "x", "y", "xy", "z", "xz", "yz", "xyz"];
        QgData {
            name: "kac-paljutkin".into(),
            basis: names.iter().map(|s| s.to_string()).collect(),
            mult,
            unit: e(0),
            comult,
            counit: vec![one; d],
            star,
            antipode,
            haar: None,
            irreps,
        }
    }
}

/// Summary row for the preset table.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetInfo {
    pub name: String,
    pub kind: &'static str,
    /// Algebra dimension; `None` for windows, whose size depends on the radius.
    pub dim: Option<usize>,
    pub kac: bool,
    pub max_irrep_dim: usize,
}

/// Every built-in preset, sorted by name.
pub fn list_presets() -> Vec<PresetInfo> {
    let mut v = Vec::new();
    for n in 1..=MAX_CYCLIC {
        v.push(PresetInfo { name: format!("dual-Z({n})"), kind: "finite", dim: Some(n), kac: true, max_irrep_dim: 1 });
        v.push(PresetInfo { name: format!("fun-Z({n})"), kind: "finite", dim: Some(n), kac: true, max_irrep_dim: 1 });
    }
    v.push(PresetInfo { name: "fun-S3".into(), kind: "finite", dim: Some(6), kac: true, max_irrep_dim: 2 });
    v.push(PresetInfo { name: "dual-S3".into(), kind: "finite", dim: Some(6), kac: true, max_irrep_dim: 1 });
    v.push(PresetInfo { name: "kac-paljutkin".into(), kind: "finite", dim: Some(8), kac: true, max_irrep_dim: 2 });
    for k in 1..=3 {
        v.push(PresetInfo { name: format!("free({k})"), kind: "window", dim: None, kac: true, max_irrep_dim: 1 });
    }
    v.sort_by(|a, b| a.name.cmp(&b.name));
    v
}

/// Built-in finite preset by name.
pub fn preset(name: &str) -> Result<FiniteQg, QgError> {
    let name = name.trim();
    if let Some(n) = parse_family(name, "dual-Z(") {
        return dual_z(n);
    }
    if let Some(n) = parse_family(name, "fun-Z(") {
        return fun_z(n);
    }
    match name {
        "fun-S3" => fun_s3(),
        "dual-S3" => dual_s3(),
        "kac-paljutkin" => kac_paljutkin(),
        _ => Err(QgError::UnknownPreset(name.into())),
    }
}

/// Finite preset by name, falling back to `<dir>/<name>.json` documents.
pub fn preset_with_search(name: &str, dirs: &[PathBuf]) -> Result<FiniteQg, QgError> {
    match preset(name) {
        Err(QgError::UnknownPreset(_)) => {}
        other => return other,
    }
    for dir in dirs {
        let path = dir.join(format!("{name}.json"));
        if let Ok(text) = std::fs::read_to_string(&path) {
            return doc::load_qg(&text);
        }
    }
    Err(QgError::UnknownPreset(name.into()))
}

fn parse_family(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
}

/// Window preset such as `free(2)`, `Z(1)` or `cyclic(5)` with the given radius.
pub fn window_preset(name: &str, radius: usize) -> Result<GroupDualWindow, QgError> {
    let name = name.trim();
    let group = if let Some(k) = parse_family(name, "free(") {
        if k == 0 || k > 3 {
            return Err(QgError::UnknownPreset(name.into()));
        }
        WindowGroup::Free { rank: k }
    } else if let Some(k) = parse_family(name, "Z(") {
        WindowGroup::Lattice { rank: k }
    } else if let Some(k) = parse_family(name, "cyclic(") {
        WindowGroup::Cyclic { order: k }
    } else {
        return Err(QgError::UnknownPreset(name.into()));
    };
    GroupDualWindow::build(group, radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_z4_shape() {
        let q = dual_z(4).unwrap();
        assert_eq!(q.dim(), 4);
        assert_eq!(q.irreps().len(), 4);
        assert!(q.irreps().iter().all(|i| i.dim == 1));
        assert!(q.invariance_residual(q.haar_vector()) < 1e-12);
    }

    #[test]
    fn kac_paljutkin_shape() {
        let q = kac_paljutkin().unwrap();
        assert_eq!(q.dim(), 8);
        let mut dims: Vec<usize> = q.irreps().iter().map(|i| i.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        assert!(q.is_kac());
        assert_eq!(q.max_irrep_dim(), 2);
    }

    #[test]
    fn kac_paljutkin_is_not_commutative_nor_cocommutative() {
        let q = kac_paljutkin().unwrap();
        let e = |i| q.basis_vector(i);
        let xz = q.mul(&e(1), &e(4));
        let zx = q.mul(&e(4), &e(1));
        assert!(numlin::max_abs_diff(&xz, &zx) > 0.5);
        let dz = q.comult(&e(4));
        let flipped: Vec<C64> = (0..64).map(|p| dz[(p % 8) * 8 + p / 8]).collect();
        assert!(numlin::max_abs_diff(&dz, &flipped) > 0.1);
    }

    #[test]
    fn characters_are_multiplicative() {
        let q = kac_paljutkin().unwrap();
        for chi in kac_paljutkin_characters().unwrap() {
            for a in 0..8 {
                for b in 0..8 {
                    let p = q.mul(&q.basis_vector(a), &q.basis_vector(b));
                    let v: C64 = p.iter().zip(&chi).map(|(x, y)| x * y).sum();
                    assert!((v - chi[a] * chi[b]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(preset("nope"), Err(QgError::UnknownPreset(_))));
        assert!(matches!(preset("dual-Z(65)"), Err(QgError::UnknownPreset(_))));
    }

    #[test]
    fn list_sorted_and_contains_kp() {
        let l = list_presets();
        assert!(l.windows(2).all(|w| w[0].name <= w[1].name));
        let kp = l.iter().find(|p| p.name == "kac-paljutkin").unwrap();
        assert_eq!((kp.dim, kp.kac, kp.max_irrep_dim), (Some(8), true, 2));
        let z4 = l.iter().find(|p| p.name == "dual-Z(4)").unwrap();
        assert_eq!(z4.max_irrep_dim, 1);
    }
}
