//! Crate-wide error type.
//!
//! Variant names follow the stable error codes used in reports and tests.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LogtcError {
    #[error("ZeroVector: the zero vector has no primitive representative")]
    ZeroVector,

    #[error("RankMismatch: expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("ConeNotInFan: the cone {0} is not a member of the fan")]
    ConeNotInFan(String),

    #[error("RankUnsupported: completeness is only decided up to rank 3 (rank {0})")]
    RankUnsupported(usize),

    #[error("NotCompleteRank2: operation requires a complete fan of rank 2")]
    NotCompleteRank2,

    #[error("NonAdjacentRays: rays {0} and {1} are not consecutive in the cyclic order")]
    NonAdjacentRays(String, String),

    #[error("MonomialUnsupported: exponent {0} lies outside the support of the fan")]
    MonomialUnsupported(String),

    #[error("FanMismatch: operands live over different fans")]
    FanMismatch,

    #[error("NotAFace: {0} is not a face of the chart cone")]
    NotAFace(String),

    #[error("NotPiecewiseLinear: representative difference across {0} is not an integer multiple of the wall form")]
    NotPiecewiseLinear(String),

    #[error("NotPointed: the cone is not strongly convex")]
    NotPointed,

    #[error("SchemaError({path}): {msg}")]
    SchemaError { path: String, msg: String },

    #[error("FanSheafError: {0}")]
    FanSheafError(String),

    #[error("NotAComplex: {0}")]
    NotAComplex(String),

    #[error("NoSuchStratum: {0}")]
    NoSuchStratum(String),

    #[error("NotInCone: {0} is outside the stratum cone (use the linear extension entry point)")]
    NotInCone(String),

    #[error("NonRestrictableChoice: no lattice point at distance 1 restricts properly on wall {0}")]
    NonRestrictableChoice(String),

    #[error("SectionVanishesOnJoint: wall {wall} restricts to zero on joint {joint}")]
    SectionVanishesOnJoint { wall: String, joint: String },

    #[error("BadJointFan: joint {0} does not carry a complete rank-2 fan")]
    BadJointFan(String),

    #[error("FactorizationUnsupported: {0}")]
    FactorizationUnsupported(String),

    #[error("InconsistentSection: wrap-around residual is nontrivial at joint {0}")]
    InconsistentSection(String),

    #[error("CenterNotInSection: center is not contained in the current vanishing divisor on wall {0}")]
    CenterNotInSection(String),

    #[error("NotSmooth: no lattice vector pairs to 1 with the ray normal")]
    NotSmooth,

    #[error("UnsupportedCoefficient: composite symbolic coefficient cannot be serialized in this format")]
    UnsupportedCoefficient,

    #[error("DivisionError: {0}")]
    DivisionError(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, LogtcError>;
