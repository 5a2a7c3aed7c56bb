//! JSON documents describing finite quantum groups by structure constants.
//!
//! Complex numbers are written either as a bare real or as `[re, im]`.
//! Structure-constant entries are `[i, j, k, re, im]` with 0-based indices.

use numlin::{c, CMatrix, C64};
use serde::{Deserialize, Serialize};

use crate::qg::{FiniteQg, Irrep, QgData};
use crate::QgError;

/// A complex number in documents: a real or a pair `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Real(f64),
    Complex([f64; 2]),
}

impl Num {
    pub fn value(self) -> C64 {
        match self {
            Num::Real(x) => c(x, 0.0),
            Num::Complex([re, im]) => c(re, im),
        }
    }
}

impl From<C64> for Num {
    fn from(z: C64) -> Self {
        Num::Complex([z.re, z.im])
    }
}

pub fn to_complex_vec(v: &[Num]) -> Vec<C64> {
    v.iter().map(|n| n.value()).collect()
}

pub fn to_num_vec(v: &[C64]) -> Vec<Num> {
    v.iter().map(|&z| z.into()).collect()
}

/// Matrix from rows of numbers, checking the shape.
pub fn to_matrix(rows: &[Vec<Num>], n: usize, what: &str) -> Result<CMatrix, QgError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(QgError::Schema(format!("{what} must be a {n}×{n} matrix")));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j].value()))
}

pub fn from_matrix(m: &CMatrix) -> Vec<Vec<Num>> {
    (0..m.rows()).map(|i| to_num_vec(m.row(i))).collect()
}

/// Irrep entry in a document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepDoc {
    pub dim: usize,
    /// `matrix[i][j]` is the coefficient vector of `u_ij`.
    pub matrix: Vec<Vec<Vec<Num>>>,
}

/// The structure-constant document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QgDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Vec<f64>>,
    pub unit: Vec<Num>,
    pub comult: Vec<Vec<f64>>,
    pub counit: Vec<Num>,
    pub star: Vec<Vec<Num>>,
    pub antipode: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub haar: Option<Vec<Num>>,
    pub irreps: Vec<IrrepDoc>,
}

fn triples(entries: &[Vec<f64>], what: &str) -> Result<Vec<(usize, usize, usize, C64)>, QgError> {
    entries
        .iter()
        .map(|e| {
            if e.len() != 4 && e.len() != 5 {
                return Err(QgError::Schema(format!("{what} entries are [i, j, k, re, im]")));
            }
            let idx = |x: f64| {
                if x >= 0.0 && x.fract() == 0.0 && x < usize::MAX as f64 {
                    Ok(x as usize)
                } else {
                    Err(QgError::Schema(format!("{what} index {x} is not a non-negative integer")))
                }
            };
            let im = if e.len() == 5 { e[4] } else { 0.0 };
            Ok((idx(e[0])?, idx(e[1])?, idx(e[2])?, c(e[3], im)))
        })
        .collect()
}

impl QgDocument {
    /// Converts to raw data, checking shapes but not axioms.
    pub fn into_data(self) -> Result<QgData, QgError> {
        let d = self.dim;
        if self.basis.len() != d {
            return Err(QgError::Schema(format!("basis has {} names, dim is {d}", self.basis.len())));
        }
        let mut irreps = Vec::with_capacity(self.irreps.len());
        for (a, irr) in self.irreps.iter().enumerate() {
            let n = irr.dim;
            if irr.matrix.len() != n || irr.matrix.iter().any(|r| r.len() != n) {
                return Err(QgError::Schema(format!("irrep {a} matrix must be {n}×{n}")));
            }
            let coeffs = irr.matrix.iter().flat_map(|r| r.iter().map(|v| to_complex_vec(v))).collect();
            irreps.push(Irrep { dim: n, coeffs });
        }
        Ok(QgData {
            name: self.name.unwrap_or_else(|| "document".into()),
            basis: self.basis,
            mult: triples(&self.mult, "mult")?,
            unit: to_complex_vec(&self.unit),
            comult: triples(&self.comult, "comult")?,
            counit: to_complex_vec(&self.counit),
            star: to_matrix(&self.star, d, "star")?,
            antipode: to_matrix(&self.antipode, d, "antipode")?,
            haar: self.haar.as_deref().map(to_complex_vec),
            irreps,
        })
    }

    /// Document reproducing a validated quantum group, Haar state included.
    pub fn from_qg(qg: &FiniteQg) -> Self {
        let d = qg.dim();
        let entry = |i: usize, j: usize, k: usize, z: C64| vec![i as f64, j as f64, k as f64, z.re, z.im];
        let mut mult = Vec::new();
        let mut comult = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for &(k, z) in qg.mult_terms(i, j) {
                    mult.push(entry(i, j, k, z));
                }
            }
            for &(j, k, z) in qg.comult_terms(i) {
                comult.push(entry(i, j, k, z));
            }
        }
        Self {
            name: Some(qg.name().to_string()),
            dim: d,
            basis: qg.basis().to_vec(),
            mult,
            unit: to_num_vec(qg.unit()),
            comult,
            counit: to_num_vec(qg.counit_vector()),
            star: from_matrix(qg.star_matrix()),
            antipode: from_matrix(qg.antipode_matrix()),
            haar: Some(to_num_vec(qg.haar_vector())),
            irreps: qg
                .irreps()
                .iter()
                .map(|irr| IrrepDoc {
                    dim: irr.dim,
                    matrix: (0..irr.dim).map(|i| (0..irr.dim).map(|j| to_num_vec(irr.entry(i, j))).collect()).collect(),
                })
                .collect(),
        }
    }
}

/// Parses and validates a structure-constant document.
pub fn load_qg(text: &str) -> Result<FiniteQg, QgError> {
    let doc: QgDocument = serde_json::from_str(text).map_err(|e| QgError::Schema(e.to_string()))?;
    FiniteQg::new(doc.into_data()?)
}

/// Serialises a quantum group to a document.
pub fn to_json(qg: &FiniteQg) -> String {
    serde_json::to_string_pretty(&QgDocument::from_qg(qg)).expect("documents always serialise")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn round_trip_kac_paljutkin() {
        let q = presets::kac_paljutkin().unwrap();
        let back = load_qg(&to_json(&q)).unwrap();
        assert_eq!(back.dim(), 8);
        assert_eq!(back.name(), "kac-paljutkin");
        assert!(numlin::max_abs_diff(back.haar_vector(), q.haar_vector()) < 1e-15);
    }

    #[test]
    fn missing_counit_is_schema_error() {
        let q = presets::dual_z(2).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&to_json(&q)).unwrap();
        v.as_object_mut().unwrap().remove("counit");
        assert!(matches!(load_qg(&v.to_string()), Err(QgError::Schema(_))));
    }

    #[test]
    fn accepts_bare_reals_and_solves_haar() {
        let text = r#"{
            "dim": 2, "basis": ["e", "g"],
            "mult": [[0,0,0,1,0],[0,1,1,1,0],[1,0,1,1,0],[1,1,0,1,0]],
            "unit": [1, 0],
            "comult": [[0,0,0,1],[1,1,1,1]],
            "counit": [1, 1],
            "star": [[1,0],[0,1]],
            "antipode": [[1,0],[0,1]],
            "irreps": [{"dim":1,"matrix":[[[1,0]]]},{"dim":1,"matrix":[[[0,1]]]}]
        }"#;
        let q = load_qg(text).unwrap();
        assert!((q.haar_vector()[0] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn bad_index_is_schema_error() {
        let q = presets::dual_z(2).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&to_json(&q)).unwrap();
        v["mult"][0][0] = serde_json::json!(-1.0);
        assert!(matches!(load_qg(&v.to_string()), Err(QgError::Schema(_))));
    }
}
