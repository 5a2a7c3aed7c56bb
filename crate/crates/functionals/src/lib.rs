//! Convolution calculus on functionals of finite quantum groups and group windows.
//!
//! A [`Functional`] is stored by its values on the parent's basis and
//! viewed through its blocks `μ^α`, in which convolution is the blockwise
//! matrix product. The crate covers positivity, positive-definite elements
//! with the `Re` and `exp` transforms, and convolution-exponential
//! semigroups with the series route as an independent oracle.

mod error;
pub mod functional;
pub mod pd;
pub mod positivity;
pub mod random;
pub mod semigroup;

pub use error::FunctionalError;
pub use functional::{Functional, FunctionalDoc, Parent};
pub use pd::{exp_transform, gauge_family, gauge_norm, gauge_strict, pd_element, re_transform, GaugePoint, PdElement};
pub use positivity::{is_positive, is_state, min_gram_eigenvalue, positivity_gram, window_gram, POSITIVITY_TOL};
pub use random::random_state;
pub use semigroup::{
    conv_exp_semigroup, derivative_recovery, exp_closed, exp_series, exp_star_series, generator_check,
    require_generator, semigroup_report, DerivativeRecovery, GeneratorCheck, SemigroupReport,
};
