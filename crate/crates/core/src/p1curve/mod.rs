//! The projective line over F_q: closed points, residue fields, Möbius
//! maps, rational self-maps and their fibres.

mod mobius;
mod point;
mod ratmap;
mod residue_field;

pub use mobius::Mobius;
pub use point::{valuation, valuation_of_fraction, ClosedPoint, RatPoint};
pub use ratmap::{FibrePoint, RationalMap};
pub use residue_field::ResidueField;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum P1Error {
    #[error("matrix is singular")]
    Singular,
    #[error("interpolation points must be pairwise distinct")]
    RepeatedPoint,
    #[error("map is constant")]
    ConstantMap,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("valuation of zero")]
    ZeroInput,
}
