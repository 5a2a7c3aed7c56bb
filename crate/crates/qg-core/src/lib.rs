//! Finite compact quantum groups given by structure constants.
//!
//! [`FiniteQg`] validates the Hopf *-algebra axioms, solves for the Haar
//! state and carries a complete list of irreducible corepresentations.
//! [`DualBlockAlgebra`] is the dual `⊕_α M_{n_α}`, and
//! [`GroupDualWindow`] models truncated duals of discrete groups. At
//! finite dimension the universal and reduced C*-algebras coincide, so a
//! single algebra object serves for both.

pub mod algebra;
pub mod dense_image;
pub mod doc;
pub mod dual;
mod error;
pub mod group;
pub mod presets;
mod qg;
pub mod rng;
pub mod window;

pub use algebra::Wedderburn;
pub use dense_image::{dense_image_report, DenseImageReport};
pub use doc::{load_qg, Num};
pub use dual::{algebra_block_pattern, algebra_wedderburn, DualBlockAlgebra};
pub use error::QgError;
pub use group::{FiniteGroup, GroupRep};
pub use qg::{solve_haar_system, tensor, AxiomCheck, FiniteQg, Irrep, QgData, AXIOM_TOL};
pub use rng::SeededRng;
pub use window::{GroupDualWindow, WindowGroup, DEFAULT_WINDOW_CAP};
