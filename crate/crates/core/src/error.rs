use serde_json::Value;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no primitive ray")]
    ZeroVector,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("vectors of different lengths: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("maximal cone {0:?} has linearly dependent rays")]
    NonSimplicialCone(Vec<usize>),
    #[error("rays {0} and {1} coincide after normalization")]
    DuplicateRay(usize, usize),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("cone {0:?} is not in the fan")]
    UnknownCone(Vec<usize>),
    #[error("fan is not finite and complete")]
    NotComplete,
    #[error("cones {0:?} and {1:?} have different projected stars")]
    MixedBlock(Vec<usize>, Vec<usize>),
    #[error("block joins cones {0:?} and {1:?} which are not potential identifications")]
    PossibleIdentViolation(Vec<usize>, Vec<usize>),
    #[error("seed pair {0:?} ~ {1:?} is not a potential identification")]
    SeedNotPossible(Vec<usize>, Vec<usize>),
    #[error("partitions belong to different fans")]
    FanMismatch,
    #[error("partition is not admissible")]
    NotAdmissible(Option<[Vec<usize>; 4]>),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("morphism has rank zero")]
    RankZero,
    #[error("functional vanishes on the normal of wall {0:?}")]
    DegenerateFunctional(Vec<usize>),
    #[error("fan is not two-dimensional")]
    NotRank2,
    #[error("star of {0:?} is not an interval of the poset")]
    NotAnInterval(Vec<usize>),
    #[error("poset is invalid: {0}")]
    PosetInvalid(String),
    #[error("poset is degenerate on the block of {0:?}")]
    Degenerate(Vec<usize>),
    #[error("interval for {0:?} is broken")]
    IntervalBroken(Vec<usize>),
    #[error("partitions are not comparable")]
    NotComparable,
    #[error("generator-distinctness certificate from the wall algebra is missing")]
    MissingWallAlgebraCertificate,
    #[error("one-skeleton is disconnected")]
    Disconnected,
    #[error("precondition not met: {0}")]
    PreconditionUnmet(String),
    #[error("arrangement face {0:?} is not simplicial")]
    NotSimplicialArrangement(Vec<i8>),
    #[error("face {0:?} does not belong to the arrangement fan")]
    UnknownFace(Vec<usize>),
    #[error("cone {0:?} is not a chamber")]
    NotAChamber(Vec<usize>),
    #[error("element is not in the wall algebra basis: {0:?}")]
    WrongBasis(Vec<i64>),
    #[error("arrangement is not the one the wall algebra is defined for")]
    WrongArrangement,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("maximal chain enumeration exceeded {0} chains")]
    ChainLimit(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::DependentBasis => "DependentBasis",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::NonSimplicialCone(_) => "NonSimplicialCone",
            Error::DuplicateRay(..) => "DuplicateRay",
            Error::BadIndex(_) => "BadIndex",
            Error::UnknownCone(_) => "UnknownCone",
            Error::NotComplete => "NotComplete",
            Error::MixedBlock(..) => "MixedBlock",
            Error::PossibleIdentViolation(..) => "PossibleIdentViolation",
            Error::SeedNotPossible(..) => "SeedNotPossible",
            Error::FanMismatch => "FanMismatch",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::NotComposable => "NotComposable",
            Error::RankZero => "RankZero",
            Error::DegenerateFunctional(_) => "DegenerateFunctional",
            Error::NotRank2 => "NotRank2",
            Error::NotAnInterval(_) => "NotAnInterval",
            Error::PosetInvalid(_) => "PosetInvalid",
            Error::Degenerate(_) => "Degenerate",
            Error::IntervalBroken(_) => "IntervalBroken",
            Error::NotComparable => "NotComparable",
            Error::MissingWallAlgebraCertificate => "MissingWallAlgebraCertificate",
            Error::Disconnected => "Disconnected",
            Error::PreconditionUnmet(_) => "PreconditionUnmet",
            Error::NotSimplicialArrangement(_) => "NotSimplicialArrangement",
            Error::UnknownFace(_) => "UnknownFace",
            Error::NotAChamber(_) => "NotAChamber",
            Error::WrongBasis(_) => "WrongBasis",
            Error::WrongArrangement => "WrongArrangement",
            Error::TooLarge(_) => "TooLarge",
            Error::ChainLimit(_) => "ChainLimit",
            Error::Parse(_) => "Parse",
        }
    }

    /// Machine-readable witness attached to the error, `null` when there is none.
    pub fn witness(&self) -> Value {
        use serde_json::json;
        match self {
            Error::DimensionMismatch(a, b) => json!([a, b]),
            Error::NonSimplicialCone(c)
            | Error::UnknownCone(c)
            | Error::DegenerateFunctional(c)
            | Error::NotAnInterval(c)
            | Error::Degenerate(c)
            | Error::IntervalBroken(c)
            | Error::UnknownFace(c)
            | Error::NotAChamber(c) => json!(c),
            Error::DuplicateRay(a, b) => json!([a, b]),
            Error::BadIndex(i) => json!(i),
            Error::MixedBlock(a, b) | Error::PossibleIdentViolation(a, b) | Error::SeedNotPossible(a, b) => {
                json!([a, b])
            }
            Error::NotAdmissible(Some(w)) => json!(w),
            Error::NotSimplicialArrangement(s) => json!(s),
            Error::WrongBasis(v) => json!(v),
            Error::ChainLimit(n) => json!(n),
            Error::PosetInvalid(s) | Error::PreconditionUnmet(s) | Error::TooLarge(s) | Error::Parse(s) => json!(s),
            _ => Value::Null,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({ "error": self.code(), "witness": self.witness() })
    }
}
