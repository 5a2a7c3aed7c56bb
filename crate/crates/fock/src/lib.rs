//! Truncated full Fock spaces, free Araki–Woods generators `s(ζ)`, the
//! lifted corepresentation `F(U)` and the induced action `α_U`.

mod error;

pub mod induced;
pub mod lift;
pub mod presets;
pub mod space;

pub use error::FockError;
pub use induced::{
    connes_weiss_experiment, ConnesWeissReport, ConnesWeissRow, InducedAction, InducedActionReport, INTERTWINING_TOL,
    INVARIANCE_TOL, TRACE_TOL,
};
pub use lift::{compatibility_residual, lift_rep, tensor_power_components, LiftedRep, COMPAT_TOL, LIFT_TOL};
pub use presets::{
    character_sum, compatible_presets, evaluation_state, fock_candidates, symmetric_vector, FockCandidate,
};
pub use space::{
    all_words, word_operator, FockOperator, Involution, TruncatedFock, INVOLUTION_TOL, MAX_TOTAL_DIM, T_TOL,
};
