//! Real-valued special functions: Gamma, erfc, erfcx and the two-parameter
//! Mittag-Leffler function.
//!
//! Everything here is a pure function of its arguments and safe to call from
//! any number of threads.

mod erf;
mod gamma;
mod ml;
pub(crate) mod quad;

pub use erf::{erf, erfc, erfcx};
pub use gamma::{gamma, ln_gamma, GAMMA_OVERFLOW_THRESHOLD};
pub(crate) use gamma::{lanczos_gamma, rgamma};
pub use ml::{mittag_leffler, ml, MLParams, MlEval};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("gamma pole at nonpositive integer x = {x}")]
    GammaPole { x: f64 },
    #[error("gamma overflow for x = {x} (threshold {threshold})")]
    GammaOverflow { x: f64, threshold: f64 },
    #[error("invalid Mittag-Leffler parameters: a = {a} must be positive and a, b, z finite")]
    InvalidMlParams { a: f64, b: f64, z: f64 },
}
