//! Finite-dimensional von Neumann algebras `⊕_b M_{n_b}` in flat
//! matrix-unit coordinates `(b, i, j)`, realised block-diagonally in `M_n`.

use numlin::{c, CMatrix, C64};
use serde::{Deserialize, Serialize};

use crate::ActionError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockAlgebra {
    blocks: Vec<usize>,
    offsets: Vec<usize>,
    diag_offsets: Vec<usize>,
    dim: usize,
    size: usize,
}

impl BlockAlgebra {
    pub fn new(blocks: &[usize]) -> Result<Self, ActionError> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(ActionError::Schema("block pattern needs positive sizes".into()));
        }
        let (mut offsets, mut diag_offsets) = (Vec::new(), Vec::new());
        let (mut o, mut d) = (0, 0);
        for &n in blocks {
            offsets.push(o);
            diag_offsets.push(d);
            o += n * n;
            d += n;
        }
        Ok(Self { blocks: blocks.to_vec(), offsets, diag_offsets, dim: o, size: d })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// `Σ n_b²`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n = Σ n_b`, the size of the block-diagonal realisation.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn flat_index(&self, b: usize, i: usize, j: usize) -> usize {
        self.offsets[b] + i * self.blocks[b] + j
    }

    pub fn split_flat(&self, f: usize) -> (usize, usize, usize) {
        let b = self.offsets.iter().rposition(|&o| o <= f).expect("index in range");
        let n = self.blocks[b];
        let r = f - self.offsets[b];
        (b, r / n, r % n)
    }

    /// Position of entry `(b, i, j)` in the block-diagonal matrix.
    fn position(&self, f: usize) -> (usize, usize) {
        let (b, i, j) = self.split_flat(f);
        (self.diag_offsets[b] + i, self.diag_offsets[b] + j)
    }

    pub fn basis_vector(&self, f: usize) -> Vec<C64> {
        let mut v = vec![c(0.0, 0.0); self.dim];
        v[f] = c(1.0, 0.0);
        v
    }

    pub fn unit(&self) -> Vec<C64> {
        let mut v = vec![c(0.0, 0.0); self.dim];
        for (b, &n) in self.blocks.iter().enumerate() {
            for i in 0..n {
                v[self.flat_index(b, i, i)] = c(1.0, 0.0);
            }
        }
        v
    }

    /// Block-diagonal matrix of an element.
    pub fn to_matrix(&self, x: &[C64]) -> CMatrix {
        let mut m = CMatrix::zeros(self.size, self.size);
        for (f, &v) in x.iter().enumerate() {
            m[self.position(f)] = v;
        }
        m
    }

    /// Block-diagonal part of a matrix, in flat coordinates.
    pub fn from_matrix(&self, m: &CMatrix) -> Vec<C64> {
        (0..self.dim).map(|f| m[self.position(f)]).collect()
    }

    /// Largest entry of `m` outside the block-diagonal pattern.
    pub fn off_pattern(&self, m: &CMatrix) -> f64 {
        let mut inside = vec![false; self.size * self.size];
        for f in 0..self.dim {
            let (r, col) = self.position(f);
            inside[r * self.size + col] = true;
        }
        (0..self.size * self.size).filter(|&p| !inside[p]).map(|p| m.data()[p].norm()).fold(0.0, f64::max)
    }

    pub fn mul(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        self.from_matrix(&(&self.to_matrix(x) * &self.to_matrix(y)))
    }

    pub fn star(&self, x: &[C64]) -> Vec<C64> {
        self.from_matrix(&self.to_matrix(x).adjoint())
    }

    /// Index of the adjoint matrix unit, `(e^b_ij)* = e^b_ji`.
    pub fn transpose_index(&self, f: usize) -> usize {
        let (b, i, j) = self.split_flat(f);
        self.flat_index(b, j, i)
    }

    /// Normalised trace `Tr/n` as a density matrix.
    pub fn normalized_trace(&self) -> CMatrix {
        CMatrix::identity(self.size).scale_real(1.0 / self.size as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_coordinates_round_trip() {
        let a = BlockAlgebra::new(&[1, 2, 3]).unwrap();
        assert_eq!(a.dim(), 14);
        assert_eq!(a.size(), 6);
        for f in 0..a.dim() {
            let (b, i, j) = a.split_flat(f);
            assert_eq!(a.flat_index(b, i, j), f);
            let e = a.basis_vector(f);
            assert_eq!(a.from_matrix(&a.to_matrix(&e)), e);
            assert_eq!(a.star(&e), a.basis_vector(a.transpose_index(f)));
        }
        assert_eq!(a.to_matrix(&a.unit()), CMatrix::identity(6));
    }

    #[test]
    fn products_follow_matrix_units() {
        let a = BlockAlgebra::new(&[2, 2]).unwrap();
        let x = a.basis_vector(a.flat_index(1, 0, 1));
        let y = a.basis_vector(a.flat_index(1, 1, 1));
        assert_eq!(a.mul(&x, &y), x);
        assert!(a.mul(&y, &x).iter().all(|z| z.norm() == 0.0));
        let z = a.basis_vector(a.flat_index(0, 1, 1));
        assert!(a.mul(&x, &z).iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn bad_patterns_rejected() {
        assert!(BlockAlgebra::new(&[]).is_err());
        assert!(BlockAlgebra::new(&[2, 0]).is_err());
    }
}
