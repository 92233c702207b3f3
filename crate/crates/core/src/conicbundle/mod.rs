//! Diagonal conic bundles a x² + b y² + c z² = 0 over P¹: local normal
//! forms, residues, the non-split locus and base change.

mod bundle;
mod locus;
mod residue;

pub use bundle::{strip_squares, ConicBundle};
pub use locus::{candidate_points, condition_star, condition_star_star, nonsplit_locus, residue_scan, NonSplitLocus};
pub use residue::{
    fibre_split_direct, minimal_splitting_field, normalize_at, residue_at, residue_raw, residue_tame_oracle,
    tame_symbol_raw, NormalForm, ResidueClass, SplittingField,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("bundle coefficients must be nonzero")]
    ZeroCoefficient,
}
