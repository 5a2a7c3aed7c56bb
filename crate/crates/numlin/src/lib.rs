//! Dense complex linear algebra for small, well-conditioned problems.
//!
//! Everything here works on [`CMatrix`], a row-major matrix of
//! `Complex64` entries. The kernel has no external numeric dependency:
//! Hermitian spectra come from cyclic Jacobi, matrix exponentials from
//! Padé scaling-and-squaring, and rank/null-space questions from a
//! one-sided Jacobi SVD.

mod eig;
mod error;
mod expm;
mod lu;
mod matrix;
mod svd;

pub use eig::{hermitian_eig, min_eigenvalue, psd_check, psd_sqrt, Eigen};
pub use error::LinalgError;
pub use expm::{expm, expm_hermitian, expm_taylor};
pub use lu::{inverse, solve};
pub use matrix::{kron, CMatrix};
pub use num_complex::Complex64 as C64;
pub use svd::{null_space, rank, svd_jacobi, Svd};

/// Shorthand for `Complex64::new(re, im)`.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Real number as a complex scalar.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Inner product `⟨a, b⟩ = Σ conj(a_i) b_i`, conjugate-linear in the first slot.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Largest absolute entrywise difference of two vectors of equal length.
pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len(), "length mismatch");
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Euclidean distance of two vectors of equal length.
pub fn vec_dist(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len(), "length mismatch");
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}
