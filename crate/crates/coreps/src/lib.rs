//! Corepresentation calculus: construction, tensor products, contragredients,
//! invariant vectors, Kazhdan gaps, weak mixing and GNS representations.

mod error;

pub mod corep;
pub mod gns;
pub mod invariants;
pub mod ops;

pub use corep::{Corep, CorepDoc, CorepParent, CorepResiduals, FiniteParent, COREP_TOL};
pub use error::CorepError;
pub use gns::{check_condition_R, gns, Gns};
pub use invariants::{
    all_units, cyclic_generator, defect, dual_unit, invariant_kernel, invariant_projection, invariant_rank, is_ergodic,
    is_weakly_mixing, kazhdan_gap,
};
pub use ops::{contragredient, intertwiner, tensor, tensor_bar, Intertwiner};
