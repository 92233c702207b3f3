//! Independent verification, reports, test-support generators and the
//! section oracle.

mod generate;
mod report;
mod section;
mod verify;

use thiserror::Error;

pub use generate::{bundle_with_prescribed_locus, random_points, Prescribed};
pub use report::{analyze, certify_requiv, certify_unirational, verify_cover, Certificate, Outcome, Report};
pub use section::{section_search_oracle, SectionLimits, SectionOutcome};
pub use verify::{verify_chain, verify_parity, verify_pullback_vanishing, verify_requiv, Check};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("unrealizable locus: {0}")]
    Unrealizable(String),
}
