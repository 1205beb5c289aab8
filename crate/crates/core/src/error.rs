use thiserror::Error;

use crate::arith::Inconsistent;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level {level} exceeds the configured maximum {max}")]
    LevelTooLarge { level: u32, max: u32 },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid group spec {0:?}")]
    InvalidSpec(String),

    #[error("genus formula produced a non-integral value {0}")]
    NonIntegralGenus(String),
    #[error("signature has non-positive hyperbolic area")]
    NonPositiveArea,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("weight 1 dimensions are not supported")]
    WeightOneUnsupported,
    #[error("odd weight requested but the signature has an even elliptic order without -I")]
    OddOrderViolation,
    #[error("dimension does not fit in 64 bits")]
    Overflow,

    #[error("quotient group is not abelian")]
    NotAbelian,
    #[error("a character table file is required for this non-abelian quotient")]
    NoCharacterTable,
    #[error("character table schema error: {0}")]
    Schema(String),
    #[error("character table orthogonality failure: {0}")]
    OrthogonalityFailure(String),
    #[error("character table class mismatch: {0}")]
    ClassMismatch(String),
    #[error("Galois orbit sum of {0} is not rational")]
    NotRationalAfterSum(String),
    #[error("no representation named {0:?}")]
    UnknownRepresentation(String),

    #[error("Artin system is inconsistent")]
    Inconsistent(#[from] Inconsistent),
    #[error("multiplicity of {rep} at weight {k} is not an integer ({value})")]
    NonIntegralMultiplicity { rep: String, k: i64, value: String },
    #[error("orbit total {total} of {rep} at weight {k} is not divisible by the orbit size {size}")]
    IndivisibleOrbitTotal { rep: String, k: i64, total: u64, size: usize },

    #[error("slope window needs weights up to {need}, but the maximum is {have}")]
    WindowTooSmall { need: i64, have: i64 },
    #[error("series for {rep} is not quasi-linear with period {period} on the window")]
    NotQuasiLinear { rep: String, period: u64 },
    #[error("decomposition identity fails at weight {k}: sum {lhs} != dim {rhs}")]
    IdentityViolation { k: i64, lhs: u64, rhs: u64 },
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
