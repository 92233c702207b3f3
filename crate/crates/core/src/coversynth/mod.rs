//! Covers of P¹ by P¹ that kill the residues of a conic bundle.

mod cover;
mod descent;
mod double;
mod kill;
mod synth;

use thiserror::Error;

pub use cover::{Cover, Step, StepKind};
pub use descent::{first_quartic_point, quadruple_point_cover, reduce_degree_cover, sqrt_alpha_point};
pub use double::{
    branch_locus, classify_fibres, conic_cover, double_cover, fibral_discriminant, fibre_type, twist_cover,
    FibreClassification, FibreType, Twist,
};
pub use kill::{kill_rational_parity, kill_rational_residues, AnchorSearch};
pub use synth::{synth_requiv_cover, synth_unirational_cover};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("unattainable: {0}")]
    Unattainable(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
