use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero character has no sphere direction")]
    ZeroCharacter,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("coefficient domains do not match: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("groups do not match")]
    GroupMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unit test over ZH is undecided for groups with torsion")]
    UndecidedTorsion,
    #[error("operation unsupported for groups with torsion: {0}")]
    TorsionUnsupported(&'static str),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("minor count {count} exceeds cap {cap}")]
    MinorCapExceeded { count: u128, cap: u128 },
    #[error("vertex count {count} exceeds cap {cap}")]
    VertexCapExceeded { count: usize, cap: usize },
    #[error("map is not surjective")]
    NotSurjective,
    #[error("character sphere is empty: abelianization has rank 0")]
    RankZero,
    #[error("unknown valuation `{0}`")]
    UnknownValuation(String),
    #[error("incompatible valuation {valuation} for coefficient domain {domain}")]
    IncompatibleValuation { valuation: String, domain: String },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
