//! Finite groups by Cayley table, used to build group and function algebras.

use numlin::{c, CMatrix, C64};

use crate::qg::{Irrep, QgData};

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    pub name: String,
    /// `table[g][h]` is the index of `gh`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
    pub labels: Vec<String>,
}

/// A unitary representation: one matrix per group element.
#[derive(Debug, Clone)]
pub struct GroupRep {
    pub dim: usize,
    pub matrices: Vec<CMatrix>,
}

impl FiniteGroup {
    /// Builds a group from a table, locating the identity and inverses.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>, labels: Vec<String>) -> Option<Self> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return None;
        }
        let identity = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity)?;
        }
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if table[table[a][b]][d] != table[a][table[b][d]] {
                        return None;
                    }
                }
            }
        }
        Some(Self { name: name.into(), table, identity, inverse, labels })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|k| k.to_string()).collect();
        Self::from_table(&format!("Z{n}"), table, labels).expect("cyclic table is a group")
    }

    /// `S_3` realised by the symmetries of a triangle; element `r^a s^b` has index `2a + b`.
    pub fn s3_with_standard_rep() -> (Self, GroupRep) {
        let th = 2.0 * std::f64::consts::PI / 3.0;
        let r = CMatrix::from_real_rows(&[&[th.cos(), -th.sin()], &[th.sin(), th.cos()]]);
        let s = CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let mut mats = Vec::new();
        let mut labels = Vec::new();
        let mut ra = CMatrix::identity(2);
        for a in 0..3 {
            for b in 0..2 {
                mats.push(if b == 0 { ra.clone() } else { &ra * &s });
                labels.push(match (a, b) {
                    (0, 0) => "e".to_string(),
                    (_, 0) => format!("r{a}"),
                    (0, _) => "s".to_string(),
                    _ => format!("r{a}s"),
                });
            }
            ra = &ra * &r;
        }
        let find = |m: &CMatrix| mats.iter().position(|x| x.dist(m) < 1e-12).expect("closed under products");
        let table = (0..6).map(|g| (0..6).map(|h| find(&(&mats[g] * &mats[h]))).collect()).collect();
        let group = Self::from_table("S3", table, labels).expect("S3 table is a group");
        (group, GroupRep { dim: 2, matrices: mats })
    }

    /// Group algebra `ℂ[G]` with `Δ(λ_g) = λ_g ⊗ λ_g`; irreps are the `λ_g`.
    pub fn group_algebra(&self, name: &str) -> QgData {
        let n = self.order();
        let one = c(1.0, 0.0);
        let mut mult = Vec::new();
        let mut comult = Vec::new();
        for g in 0..n {
            for h in 0..n {
                mult.push((g, h, self.table[g][h], one));
            }
            comult.push((g, g, g, one));
        }
        let perm =
            |f: &dyn Fn(usize) -> usize| CMatrix::from_fn(n, n, |i, j| if i == f(j) { one } else { c(0.0, 0.0) });
        let star = perm(&|g| self.inverse[g]);
        let antipode = star.clone();
        let mut unit = vec![c(0.0, 0.0); n];
        unit[self.identity] = one;
        let mut haar = vec![c(0.0, 0.0); n];
        haar[self.identity] = one;
        let irreps = (0..n)
            .map(|g| {
                let mut v = vec![c(0.0, 0.0); n];
                v[g] = one;
                Irrep { dim: 1, coeffs: vec![v] }
            })
            .collect();
        QgData {
            name: name.into(),
            basis: self.labels.iter().map(|l| format!("λ({l})")).collect(),
            mult,
            unit,
            comult,
            counit: vec![one; n],
            star,
            antipode,
            haar: Some(haar),
            irreps,
        }
    }

    /// Function algebra `C(G)` with `Δ(δ_g) = Σ_h δ_h ⊗ δ_{h⁻¹g}`; irreps are
    /// the coefficient functions of the supplied unitary representations.
    pub fn function_algebra(&self, name: &str, reps: &[GroupRep]) -> QgData {
        let n = self.order();
        let one = c(1.0, 0.0);
        let mut mult = Vec::new();
        let mut comult = Vec::new();
        for g in 0..n {
            mult.push((g, g, g, one));
            for h in 0..n {
                comult.push((g, h, self.table[self.inverse[h]][g], one));
            }
        }
        let antipode = CMatrix::from_fn(n, n, |i, j| if i == self.inverse[j] { one } else { c(0.0, 0.0) });
        let mut counit = vec![c(0.0, 0.0); n];
        counit[self.identity] = one;
        let irreps = reps
            .iter()
            .map(|rep| {
                let k = rep.dim;
                let coeffs = (0..k * k)
                    .map(|ij| (0..n).map(|g| rep.matrices[g][(ij / k, ij % k)]).collect::<Vec<C64>>())
                    .collect();
                Irrep { dim: k, coeffs }
            })
            .collect();
        QgData {
            name: name.into(),
            basis: self.labels.iter().map(|l| format!("δ({l})")).collect(),
            mult,
            unit: vec![one; n],
            comult,
            counit,
            star: CMatrix::identity(n),
            antipode,
            haar: Some(vec![c(1.0 / n as f64, 0.0); n]),
            irreps,
        }
    }

    /// One-dimensional representations of an abelian cyclic group: `χ_k(g) = e^{2πikg/n}`.
    pub fn cyclic_characters(n: usize) -> Vec<GroupRep> {
        (0..n)
            .map(|k| GroupRep {
                dim: 1,
                matrices: (0..n)
                    .map(|g| {
                        let th = 2.0 * std::f64::consts::PI * ((k * g) % n) as f64 / n as f64;
                        CMatrix::new(1, 1, vec![c(th.cos(), th.sin())])
                    })
                    .collect(),
            })
            .collect()
    }

    /// Trivial representation.
    pub fn trivial_rep(&self) -> GroupRep {
        GroupRep { dim: 1, matrices: vec![CMatrix::identity(1); self.order()] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let (g, rep) = FiniteGroup::s3_with_standard_rep();
        assert_eq!(g.order(), 6);
        assert!((0..6).any(|a| (0..6).any(|b| g.table[a][b] != g.table[b][a])));
        for a in 0..6 {
            for b in 0..6 {
                let lhs = &rep.matrices[a] * &rep.matrices[b];
                assert!(lhs.dist(&rep.matrices[g.table[a][b]]) < 1e-12);
            }
            assert!(rep.matrices[a].unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn bad_table_rejected() {
        assert!(FiniteGroup::from_table("x", vec![vec![0, 0], vec![0, 0]], vec![]).is_none());
    }
}
