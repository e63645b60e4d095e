use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the kernel can report. Each variant has a stable name
/// (see [`Error::name`]) used in JSON reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("augmentation sends relation `{relation}` to {value}, not 0")]
    AugmentationMismatch { relation: String, value: Rational },
    #[error("not a Weil algebra: generator `{generator}` is not nilpotent below degree {cap}")]
    NotWeil { generator: String, cap: u32 },
    #[error("normal form computation exceeded the degree cap {cap}")]
    NormalFormDivergence { cap: u32 },
    #[error("operands live in different algebras")]
    AlgebraMismatch,
    #[error("element has zero augmentation and is not invertible")]
    NotInvertible,
    #[error("division by an element with zero augmentation")]
    DivisionByInfinitesimal,
    #[error("primitive `{0}` has no exact derivative tower; use float mode")]
    ExactModeUnsupportedPrimitive(String),
    #[error("unknown primitive `{0}`")]
    UnknownPrimitive(String),
    #[error("point is not on the locus: constraint {constraint} evaluates to {residue}")]
    PointNotOnLocus { constraint: usize, residue: String },
    #[error("lift failed: {0}")]
    LiftFailed(String),
    #[error("square `{0}` is not an infinitesimal R-pushout")]
    SquareNotRPushout(String),
    #[error("matrix determinant is {0}, expected 1")]
    DeterminantNotOne(i64),
    #[error("point is not in the upper half plane")]
    NotInUpperHalfPlane,
    #[error("lattice basis vectors are linearly dependent")]
    DegenerateBasis,
    #[error("bases generate different lattices")]
    NotSameLattice,
    #[error("bases have opposite orientation")]
    OrientationMismatch,
    #[error("point is not in the carrier: {0}")]
    PointNotInCarrier(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("association invariant violated: {clause} at {at}")]
    InvariantViolation { clause: String, at: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable structured name of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::UndeclaredGenerator(_) => "UndeclaredGenerator",
            Error::UndeclaredVariable(_) => "UndeclaredVariable",
            Error::AugmentationMismatch { .. } => "AugmentationMismatch",
            Error::NotWeil { .. } => "NotWeil",
            Error::NormalFormDivergence { .. } => "NormalFormDivergence",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::NotInvertible => "NotInvertible",
            Error::DivisionByInfinitesimal => "DivisionByInfinitesimal",
            Error::ExactModeUnsupportedPrimitive(_) => "ExactModeUnsupportedPrimitive",
            Error::UnknownPrimitive(_) => "UnknownPrimitive",
            Error::PointNotOnLocus { .. } => "PointNotOnLocus",
            Error::LiftFailed(_) => "LiftFailed",
            Error::SquareNotRPushout(_) => "SquareNotRPushout",
            Error::DeterminantNotOne(_) => "DeterminantNotOne",
            Error::NotInUpperHalfPlane => "NotInUpperHalfPlane",
            Error::DegenerateBasis => "DegenerateBasis",
            Error::NotSameLattice => "NotSameLattice",
            Error::OrientationMismatch => "OrientationMismatch",
            Error::PointNotInCarrier(_) => "PointNotInCarrier",
            Error::NotAGroup(_) => "NotAGroup",
            Error::InvariantViolation { .. } => "InvariantViolation",
            Error::Invalid(_) => "InvalidInput",
        }
    }
}
