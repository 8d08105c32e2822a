use thiserror::Error;

use crate::gf::GfError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] GfError),

    #[error("degree-3 enumeration over |F_{{q^6}}| = {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("affine triple violates c^q + c = b^(q+1)")]
    AffineConstraint,
    #[error("a must be nonzero in an affine triple")]
    AffineZeroScale,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not preserve the curve")]
    NotAnAutomorphism,
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("constraint error at {pos}: {msg}")]
    Constraint { pos: usize, msg: String },

    #[error("place is not rational")]
    NotRational,
    #[error("horizon {0} is below the minimum q + 3")]
    HorizonTooSmall(usize),
    #[error("valuation undetermined up to horizon {0}")]
    Indeterminate(usize),
    #[error("identity has no ramification value")]
    IdentityValue,
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("wild ramification at a degree-3 place (e = {0})")]
    WildDegreeThree(usize),

    #[error("Hurwitz formula gives a non-integral genus ({num}/{den})")]
    NonIntegralGenus { num: i64, den: i64 },
    #[error("Hurwitz formula gives a negative genus ({0})")]
    NegativeGenus(i64),
    #[error("outside the regime of the tame different shortcut")]
    OutsideRegime,

    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
