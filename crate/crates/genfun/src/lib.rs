//! Generating functionals: conditional negative definiteness, Schürmann
//! triples, the matrices `V^(l)` with the operators `T_γ`, the construction
//! of central strongly unbounded generators and the no-invariant-vector
//! bound for `π_t ⋆ π_t` on group windows.

mod error;

pub mod generating;
pub mod lemma74;
pub mod report;
pub mod schurmann;
pub mod theorem69;
pub mod vmatrix;

pub use error::GenFunError;
pub use generating::{form_value, validate_generating, GenFunctional, CND_TOL, GEN_TOL};
pub use lemma74::{lemma74_experiment, normalize, zeta_norm, Lemma74Row, ZetaTerm};
pub use report::{ExperimentReport, StageRow};
pub use schurmann::{check_t_norms, cocycle_inner, schurmann_triple, t_operators, SchurmannTriple};
pub use theorem69::{
    length_ball, theorem69_constructor, CentralPdSequence, FnSequence, PoissonSequence, Stage, Theorem69, MAX_STAGES,
};
pub use vmatrix::{build_v_matrices, constructive_k, VMatrix, VRow, V_TOL};
